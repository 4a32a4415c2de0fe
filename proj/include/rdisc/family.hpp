#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <span>
#include <vector>

#include "rdisc/matrix.hpp"
#include "rdisc/polynomial.hpp"

namespace rdisc {

/// The general monic family P = x^n + a1*x^(n-1) + ... + an over the table
/// {x, a1..an}.
inline Polynomial general_family(int n) {
  if (n < 2) throw UsageError("general_family: n must be >= 2");
  TablePtr table = VarTable::family(n);
  std::vector<Polynomial::Term> terms;
  terms.push_back({Monomial::power(*table, 0, static_cast<unsigned>(n)), Int(1)});
  for (int j = 1; j <= n; ++j) {
    std::vector<unsigned> exps(table->size(), 0u);
    exps[0] = static_cast<unsigned>(n - j);
    exps[static_cast<std::size_t>(j)] = 1;
    terms.push_back({Monomial::make(*table, exps), Int(1)});
  }
  return Polynomial::from_terms(std::move(table), std::move(terms));
}

/// Q_k = (n-k)P - xP' for k <= n-1, and Q_n = P'. Integer coefficients by
/// construction; expands to -k*x^n + sum_j (j-k)*a_j*x^(n-j), so a_k never
/// occurs in Q_k.
inline Polynomial q_family(int n, int k) {
  if (n < 2) throw UsageError("q_family: n must be >= 2");
  if (k < 1 || k > n) throw UsageError("q_family: k out of range");
  Polynomial p = general_family(n);
  Polynomial dp = derivative(p, std::size_t(0));
  if (k == n) return dp;
  Polynomial x = Polynomial::variable(p.table(), std::size_t(0));
  return Int(n - k) * p - x * dp;
}

/// T_k: primitive part of Res(Q_k, Q_k', x), additionally divided by a_n when
/// k == n-1 (where the raw resultant picks up one factor of a_n). Lives over
/// the coefficient table {a1..an} and never involves a_k.
inline Polynomial v_poly(int n, int k) {
  if (n < 3) throw UsageError("v_poly: n must be >= 3");
  if (k < 1 || k > n) throw UsageError("v_poly: k out of range");
  Polynomial q = q_family(n, k);
  Polynomial qp = derivative(q, std::size_t(0));
  Polynomial res = resultant(q, qp, std::size_t(0));
  Polynomial w = project(res, VarTable::coefficients(n));
  if (k == n - 1) {
    // Structural claim: the resultant is divisible by a_n exactly once here.
    Polynomial an = Polynomial::variable(w.table(), "a" + std::to_string(n));
    w = exact_div(w, an);
  }
  return primitive_part(w);
}

/// Root multiplicity pattern, e.g. [3,1,...,1] for the triple-root stratum
/// and [2,2,1,...,1] for the Maxwell stratum.
struct RootPattern {
  std::vector<int> multiplicities;

  int degree() const {
    return std::accumulate(multiplicities.begin(), multiplicities.end(), 0);
  }
};

inline RootPattern sigma_pattern(int n) {
  if (n < 3) throw UsageError("sigma_pattern: n must be >= 3");
  RootPattern p{{3}};
  for (int i = 0; i < n - 3; ++i) p.multiplicities.push_back(1);
  return p;
}

inline RootPattern maxwell_pattern(int n) {
  if (n < 4) throw UsageError("maxwell_pattern: n must be >= 4");
  RootPattern p{{2, 2}};
  for (int i = 0; i < n - 4; ++i) p.multiplicities.push_back(1);
  return p;
}

inline RootPattern simple_pattern(int n) {
  if (n < 1) throw UsageError("simple_pattern: n must be >= 1");
  return RootPattern{std::vector<int>(static_cast<std::size_t>(n), 1)};
}

/// Expands prod (x - z_i)^(m_i) and returns (a1..an): the signed elementary
/// symmetric values of the root multiset.
inline std::vector<Int> coeffs_from_roots(std::span<const long> roots,
                                          const RootPattern& pattern) {
  if (roots.size() != pattern.multiplicities.size())
    throw UsageError("coeffs_from_roots: one root per pattern entry required");
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (roots[i] == roots[j])
        throw UsageError("coeffs_from_roots: roots must be distinct");
  for (int m : pattern.multiplicities)
    if (m < 1) throw UsageError("coeffs_from_roots: multiplicities must be >= 1");
  // Ascending-degree coefficient convolution.
  std::vector<Int> poly{Int(1)};
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (int rep = 0; rep < pattern.multiplicities[i]; ++rep) {
      std::vector<Int> next(poly.size() + 1, Int(0));
      for (std::size_t d = 0; d < poly.size(); ++d) {
        next[d + 1] += poly[d];
        next[d] -= Int(roots[i]) * poly[d];
      }
      poly = std::move(next);
    }
  }
  const int n = pattern.degree();
  std::vector<Int> coeffs(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j)
    coeffs[static_cast<std::size_t>(j - 1)] = poly[static_cast<std::size_t>(n - j)];
  return coeffs;
}

/// A sampled point of a root stratum: the integer roots and the coefficient
/// vector of the expanded product.
struct StrataSample {
  std::vector<long> roots;
  RootPattern pattern;
  std::vector<Int> coeffs;
};

/// Deterministic stratum samples: distinct integer roots in [-20, 20] drawn
/// from the seed. Same seed, same samples.
inline std::vector<StrataSample> sample_stratum(int n, const RootPattern& pattern,
                                                int count, std::uint64_t seed) {
  if (pattern.degree() != n)
    throw UsageError("sample_stratum: pattern does not sum to n");
  std::mt19937_64 rng(seed);
  // Raw modulo keeps draws identical across standard library implementations.
  auto draw = [&rng]() { return static_cast<long>(rng() % 41) - 20; };
  std::vector<StrataSample> out;
  out.reserve(static_cast<std::size_t>(count));
  while (out.size() < static_cast<std::size_t>(count)) {
    std::vector<long> roots;
    std::set<long> used;
    while (roots.size() < pattern.multiplicities.size()) {
      long z = draw();
      if (used.insert(z).second) roots.push_back(z);
    }
    out.push_back({roots, pattern, coeffs_from_roots(roots, pattern)});
  }
  return out;
}

/// Coefficients of P(x+h) for monic P given by (a1..an).
inline std::vector<Int> shift_coeffs(std::span<const Int> a, const Int& h) {
  const std::size_t n = a.size();
  // p[d] = coefficient of x^d.
  std::vector<Int> p(n + 1, Int(0));
  p[n] = 1;
  for (std::size_t j = 1; j <= n; ++j) p[n - j] = a[j - 1];
  for (std::size_t round = 0; round < n; ++round)
    for (std::size_t d = n - 1; d + 1 > round; --d) p[d] += h * p[d + 1];
  std::vector<Int> out(n);
  for (std::size_t j = 1; j <= n; ++j) out[j - 1] = p[n - j];
  return out;
}

/// Reversal x^n * P(1/x): full coefficient vector (leading first) of
/// a_n*x^n + ... + a_1*x + 1. Requires a_n != 0; non-monic by design.
inline std::vector<Int> reverse_family(std::span<const Int> a) {
  if (a.empty() || a.back() == 0)
    throw UsageError("reverse_family: a_n must be nonzero");
  std::vector<Int> out(a.size() + 1);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[a.size() - 1 - i];
  out.back() = 1;
  return out;
}

}  // namespace rdisc
