#pragma once

// Umbrella header: exact discriminants and repeated-discriminant
// factorization certificates for the general monic polynomial family.

#include "rdisc/cache.hpp"
#include "rdisc/errors.hpp"
#include "rdisc/factorize.hpp"
#include "rdisc/family.hpp"
#include "rdisc/matrix.hpp"
#include "rdisc/monomial.hpp"
#include "rdisc/numbers.hpp"
#include "rdisc/polynomial.hpp"
#include "rdisc/report.hpp"
#include "rdisc/textio.hpp"
#include "rdisc/vartable.hpp"
#include "rdisc/version.hpp"
