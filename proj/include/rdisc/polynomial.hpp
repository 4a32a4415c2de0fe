#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rdisc/monomial.hpp"
#include "rdisc/numbers.hpp"
#include "rdisc/vartable.hpp"

namespace rdisc {

/// Sparse multivariate polynomial over the integers in canonical form:
/// terms sorted descending in the term order, no zero coefficients.
/// Immutable value semantics; every operation returns a fresh polynomial,
/// so unrestricted concurrent reads are safe.
class Polynomial {
 public:
  struct Term {
    Monomial mono;
    Int coeff;
  };

  explicit Polynomial(TablePtr table) : table_(std::move(table)) {
    if (!table_) throw UsageError("Polynomial: null table");
  }

  static Polynomial zero(TablePtr table) { return Polynomial(std::move(table)); }

  static Polynomial constant(TablePtr table, Int value) {
    Polynomial p(std::move(table));
    if (value != 0)
      p.terms_.push_back({Monomial::unit(p.table_->size()), std::move(value)});
    return p;
  }

  static Polynomial one(TablePtr table) { return constant(std::move(table), 1); }

  static Polynomial variable(TablePtr table, std::size_t var) {
    Polynomial p(std::move(table));
    p.terms_.push_back({Monomial::power(*p.table_, var, 1), Int(1)});
    return p;
  }

  static Polynomial variable(TablePtr table, std::string_view name) {
    std::size_t idx = table->require_index(name);
    return variable(std::move(table), idx);
  }

  /// c * v^e
  static Polynomial var_power(TablePtr table, std::size_t var, unsigned e,
                              Int c = Int(1)) {
    Polynomial p(std::move(table));
    if (c != 0) p.terms_.push_back({Monomial::power(*p.table_, var, e), std::move(c)});
    return p;
  }

  static Polynomial from_term(TablePtr table, Monomial m, Int c) {
    Polynomial p(std::move(table));
    if (c != 0) p.terms_.push_back({m, std::move(c)});
    return p;
  }

  /// Canonicalizes an arbitrary term list (sorts, merges, drops zeros).
  static Polynomial from_terms(TablePtr table, std::vector<Term> terms) {
    Polynomial p(std::move(table));
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
      return Monomial::compare(a.mono, b.mono) > 0;
    });
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
        p.terms_.back().coeff += t.coeff;
      } else {
        p.terms_.push_back(std::move(t));
      }
    }
    std::erase_if(p.terms_, [](const Term& t) { return t.coeff == 0; });
    return p;
  }

  const TablePtr& table() const { return table_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  const Term& leading() const {
    if (terms_.empty()) throw UsageError("leading term of zero polynomial");
    return terms_.front();
  }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_unit());
  }

  Int constant_value() const {
    if (terms_.empty()) return Int(0);
    if (!is_constant()) throw UsageError("constant_value of non-constant polynomial");
    return terms_[0].coeff;
  }

  bool is_one() const { return is_constant() && constant_value() == 1; }

  /// Max exponent of `var` over all terms; -1 for the zero polynomial.
  long degree_in(std::size_t var) const {
    if (var >= table_->size()) throw UsageError("degree_in: variable out of range");
    long d = -1;
    for (const auto& t : terms_)
      d = std::max(d, static_cast<long>(t.mono.exp(var)));
    return d;
  }

  long degree_in(std::string_view name) const {
    return degree_in(table_->require_index(name));
  }

  /// Coefficient of an exact monomial (0 when absent).
  Int coeff_of(const Monomial& m) const {
    auto it = std::lower_bound(
        terms_.begin(), terms_.end(), m, [](const Term& t, const Monomial& key) {
          return Monomial::compare(t.mono, key) > 0;
        });
    if (it != terms_.end() && it->mono == m) return it->coeff;
    return Int(0);
  }

  Polynomial operator-() const {
    Polynomial r(table_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono, -t.coeff});
    return r;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    return merge(a, b, /*negate_b=*/false);
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    return merge(a, b, /*negate_b=*/true);
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    require_compatible(a.table_, b.table_);
    Polynomial r(a.table_);
    if (a.is_zero() || b.is_zero()) return r;
    if (a.term_count() == 1) return b.term_times(a.terms_[0]);
    if (b.term_count() == 1) return a.term_times(b.terms_[0]);
    std::unordered_map<Monomial, Int, Monomial::Hash> acc;
    acc.reserve(a.term_count() + b.term_count());
    for (const auto& ta : a.terms_) {
      for (const auto& tb : b.terms_) {
        auto [it, fresh] = acc.try_emplace(ta.mono.times(tb.mono));
        mpz_addmul(it->second.get_mpz_t(), ta.coeff.get_mpz_t(),
                   tb.coeff.get_mpz_t());
      }
    }
    r.terms_.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (c != 0) r.terms_.push_back({m, std::move(c)});
    std::sort(r.terms_.begin(), r.terms_.end(), [](const Term& x, const Term& y) {
      return Monomial::compare(x.mono, y.mono) > 0;
    });
    return r;
  }

  friend Polynomial operator*(const Polynomial& a, const Int& c) {
    Polynomial r(a.table_);
    if (c == 0) return r;
    r.terms_.reserve(a.terms_.size());
    for (const auto& t : a.terms_) r.terms_.push_back({t.mono, t.coeff * c});
    return r;
  }
  friend Polynomial operator*(const Int& c, const Polynomial& a) { return a * c; }

  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  /// Product with a single term (linear pass, stays canonical).
  Polynomial term_times(const Term& t) const {
    Polynomial r(table_);
    if (t.coeff == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& s : terms_)
      r.terms_.push_back({s.mono.times(t.mono), s.coeff * t.coeff});
    return r;
  }

  Polynomial pow(unsigned e) const {
    Polynomial result = one(table_);
    Polynomial base = *this;
    while (e > 0) {
      if (e & 1u) result = result * base;
      e >>= 1u;
      if (e > 0) base = base * base;
    }
    return result;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (!tables_compatible(a.table_, b.table_)) return false;
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (a.terms_[i].mono != b.terms_[i].mono ||
          a.terms_[i].coeff != b.terms_[i].coeff)
        return false;
    return true;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) {
    return !(a == b);
  }

 private:
  static Polynomial merge(const Polynomial& a, const Polynomial& b, bool negate_b) {
    require_compatible(a.table_, b.table_);
    Polynomial r(a.table_);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() && j < b.terms_.size()) {
      int cmp = Monomial::compare(a.terms_[i].mono, b.terms_[j].mono);
      if (cmp > 0) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (cmp < 0) {
        const auto& t = b.terms_[j++];
        r.terms_.push_back({t.mono, negate_b ? Int(-t.coeff) : t.coeff});
      } else {
        Int c = negate_b ? Int(a.terms_[i].coeff - b.terms_[j].coeff)
                         : Int(a.terms_[i].coeff + b.terms_[j].coeff);
        if (c != 0) r.terms_.push_back({a.terms_[i].mono, std::move(c)});
        ++i;
        ++j;
      }
    }
    for (; i < a.terms_.size(); ++i) r.terms_.push_back(a.terms_[i]);
    for (; j < b.terms_.size(); ++j) {
      const auto& t = b.terms_[j];
      r.terms_.push_back({t.mono, negate_b ? Int(-t.coeff) : t.coeff});
    }
    return r;
  }

  TablePtr table_;
  std::vector<Term> terms_;
};

/// Formal partial derivative with respect to one table variable.
inline Polynomial derivative(const Polynomial& a, std::size_t var) {
  if (var >= a.table()->size())
    throw UsageError("derivative: variable out of range");
  std::vector<Polynomial::Term> out;
  out.reserve(a.term_count());
  for (const auto& t : a.terms()) {
    unsigned e = t.mono.exp(var);
    if (e == 0) continue;
    Monomial m = t.mono.divided_by(Monomial::power(*a.table(), var, 1));
    out.push_back({m, t.coeff * e});
  }
  return Polynomial::from_terms(a.table(), std::move(out));
}

inline Polynomial derivative(const Polynomial& a, std::string_view name) {
  return derivative(a, a.table()->require_index(name));
}

/// Replaces `var` by the polynomial `value` (same table), expanding to
/// canonical form. Powers of `value` are cached per exponent.
inline Polynomial substitute(const Polynomial& a, std::size_t var,
                             const Polynomial& value) {
  if (var >= a.table()->size())
    throw UsageError("substitute: variable out of range");
  require_compatible(a.table(), value.table());
  long maxdeg = a.degree_in(var);
  if (maxdeg <= 0) return a;
  std::vector<Polynomial> powers(static_cast<std::size_t>(maxdeg) + 1,
                                 Polynomial::one(a.table()));
  for (std::size_t e = 1; e < powers.size(); ++e)
    powers[e] = powers[e - 1] * value;
  Polynomial acc(a.table());
  // Group terms by exponent of var so each bucket costs one multiplication.
  std::map<unsigned, std::vector<Polynomial::Term>> buckets;
  for (const auto& t : a.terms()) {
    unsigned e = t.mono.exp(var);
    buckets[e].push_back({t.mono.without(var, *a.table()), t.coeff});
  }
  for (auto& [e, terms] : buckets) {
    Polynomial part = Polynomial::from_terms(a.table(), std::move(terms));
    acc += e == 0 ? part : part * powers[e];
  }
  return acc;
}

inline Polynomial substitute(const Polynomial& a, std::string_view name,
                             const Polynomial& value) {
  return substitute(a, a.table()->require_index(name), value);
}

inline Polynomial substitute(const Polynomial& a, std::size_t var, const Int& value) {
  return substitute(a, var, Polynomial::constant(a.table(), value));
}

inline Polynomial substitute(const Polynomial& a, std::string_view name,
                             const Int& value) {
  return substitute(a, a.table()->require_index(name), value);
}

/// Exact value at a full assignment (one Int per table slot; unused slots are
/// ignored).
inline Int evaluate(const Polynomial& a, std::span<const Int> point) {
  if (point.size() != a.table()->size())
    throw UsageError("evaluate: point size does not match table");
  Int sum = 0;
  Int prod;
  for (const auto& t : a.terms()) {
    prod = t.coeff;
    for (std::size_t i = 0; i < point.size(); ++i) {
      unsigned e = t.mono.exp(i);
      if (e == 0) continue;
      prod *= int_pow(point[i], e);
    }
    sum += prod;
  }
  return sum;
}

/// Named-point variant; every variable occurring in `a` must be assigned.
inline Int evaluate(const Polynomial& a, const std::map<std::string, Int>& point) {
  const auto& table = *a.table();
  std::vector<Int> full(table.size(), Int(0));
  std::vector<bool> assigned(table.size(), false);
  for (const auto& [name, value] : point) {
    auto idx = table.index_of(name);
    if (!idx) throw UsageError("evaluate: unknown variable " + name);
    full[*idx] = value;
    assigned[*idx] = true;
  }
  for (const auto& t : a.terms())
    for (std::size_t i = 0; i < table.size(); ++i)
      if (t.mono.exp(i) > 0 && !assigned[i])
        throw UsageError("evaluate: missing assignment for " + table.name(i));
  return evaluate(a, full);
}

namespace detail {
inline std::string brief_term(const Polynomial::Term& t, const VarTable& table) {
  std::string s = t.coeff.get_str();
  for (std::size_t i = 0; i < table.size(); ++i) {
    unsigned e = t.mono.exp(i);
    if (e == 0) continue;
    s += "*" + table.name(i);
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}
}  // namespace detail

/// Quotient A/B under the term order, requiring a zero remainder.
/// Throws NotDivisibleError (with the offending term) otherwise.
inline Polynomial exact_div(const Polynomial& a, const Polynomial& b) {
  require_compatible(a.table(), b.table());
  if (b.is_zero()) throw UsageError("exact_div: division by zero polynomial");
  Polynomial quotient(a.table());
  Polynomial rem = a;
  const auto& lead_b = b.leading();
  std::vector<Polynomial::Term> qterms;
  while (!rem.is_zero()) {
    const auto& lt = rem.leading();
    if (!lead_b.mono.divides(lt.mono) || !int_divides(lead_b.coeff, lt.coeff))
      throw NotDivisibleError(detail::brief_term(lt, *a.table()));
    Polynomial::Term q{lt.mono.divided_by(lead_b.mono),
                       int_div_exact(lt.coeff, lead_b.coeff)};
    rem -= b.term_times(q);
    qterms.push_back(std::move(q));
  }
  return Polynomial::from_terms(a.table(), std::move(qterms));
}

/// Positive gcd of all coefficients.
inline Int content(const Polynomial& a) {
  if (a.is_zero()) throw UsageError("content of zero polynomial");
  Int g = 0;
  for (const auto& t : a.terms()) {
    g = int_gcd(g, t.coeff);
    if (g == 1) break;
  }
  return g;
}

/// a / content(a), sign-normalized so the leading coefficient is positive.
inline Polynomial primitive_part(const Polynomial& a) {
  Int c = content(a);
  if (sgn(a.leading().coeff) < 0) c = -c;
  std::vector<Polynomial::Term> out;
  out.reserve(a.term_count());
  for (const auto& t : a.terms())
    out.push_back({t.mono, int_div_exact(t.coeff, c)});
  return Polynomial::from_terms(a.table(), std::move(out));
}

/// Weighted degree when a is quasi-homogeneous, nullopt otherwise.
inline std::optional<long long> qh_degree(const Polynomial& a) {
  if (a.is_zero()) throw UsageError("qh_degree of zero polynomial");
  std::uint64_t d = a.terms().front().mono.weighted_degree();
  for (const auto& t : a.terms())
    if (t.mono.weighted_degree() != d) return std::nullopt;
  return static_cast<long long>(d);
}

/// Two distinct weighted degrees witnessing non-quasi-homogeneity.
inline std::pair<long long, long long> qh_witnesses(const Polynomial& a) {
  if (a.is_zero()) throw UsageError("qh_witnesses of zero polynomial");
  std::uint64_t d0 = a.terms().front().mono.weighted_degree();
  for (const auto& t : a.terms())
    if (t.mono.weighted_degree() != d0)
      return {static_cast<long long>(d0),
              static_cast<long long>(t.mono.weighted_degree())};
  throw UsageError("qh_witnesses: polynomial is quasi-homogeneous");
}

/// Largest e with var^e dividing a (minimum exponent across terms).
inline unsigned var_multiplicity(const Polynomial& a, std::size_t var) {
  if (a.is_zero()) throw UsageError("var_multiplicity of zero polynomial");
  if (var >= a.table()->size())
    throw UsageError("var_multiplicity: variable out of range");
  unsigned m = kMaxExponent + 1;
  for (const auto& t : a.terms()) {
    m = std::min(m, t.mono.exp(var));
    if (m == 0) break;
  }
  return m;
}

inline unsigned var_multiplicity(const Polynomial& a, std::string_view name) {
  return var_multiplicity(a, a.table()->require_index(name));
}

/// Term-order long-division square root: B with B*B == A, leading
/// coefficient positive. Throws NotASquareError when no such B exists.
inline Polynomial poly_sqrt(const Polynomial& a) {
  if (a.is_zero()) throw UsageError("poly_sqrt of zero polynomial");
  const auto& lt = a.leading();
  if (sgn(lt.coeff) < 0 || !is_perfect_square(lt.coeff))
    throw NotASquareError("leading coefficient " + lt.coeff.get_str() +
                          " is not a perfect square");
  if (!lt.mono.all_even())
    throw NotASquareError("leading monomial has an odd exponent");
  Polynomial::Term root_lead{lt.mono.halved(), int_sqrt(lt.coeff)};
  Polynomial root = Polynomial::from_term(a.table(), root_lead.mono, root_lead.coeff);
  Polynomial rem = a - root * root;
  // Divisor for each correction step is 2 * leading(root), which never changes.
  const Int twice_lc = 2 * root_lead.coeff;
  Monomial last_mono = lt.mono;
  while (!rem.is_zero()) {
    const auto& rt = rem.leading();
    if (Monomial::compare(rt.mono, last_mono) >= 0)
      throw NotASquareError("remainder failed to decrease at " +
                            detail::brief_term(rt, *a.table()));
    last_mono = rt.mono;
    if (!root_lead.mono.divides(rt.mono) || !int_divides(twice_lc, rt.coeff))
      throw NotASquareError("step not divisible at " +
                            detail::brief_term(rt, *a.table()));
    Polynomial::Term q{rt.mono.divided_by(root_lead.mono),
                       int_div_exact(rt.coeff, twice_lc)};
    Polynomial qp = Polynomial::from_term(a.table(), q.mono, q.coeff);
    // rem -= q * (2*root + q), keeping rem == a - (root+q)^2.
    rem -= root.term_times({q.mono, 2 * q.coeff});
    rem -= qp.term_times(q);
    root += qp;
  }
  if (root * root != a) throw NotASquareError("verification product mismatch");
  return root;
}

/// Coefficients of `a` viewed as a polynomial in `var`; index = exponent.
/// Entries live over the same table with the exponent of `var` zeroed.
inline std::vector<Polynomial> coeffs_in(const Polynomial& a, std::size_t var) {
  long deg = a.degree_in(var);
  std::vector<std::vector<Polynomial::Term>> buckets(
      static_cast<std::size_t>(std::max(deg, 0L)) + 1);
  for (const auto& t : a.terms())
    buckets[t.mono.exp(var)].push_back({t.mono.without(var, *a.table()), t.coeff});
  std::vector<Polynomial> out;
  out.reserve(buckets.size());
  for (auto& b : buckets)
    out.push_back(Polynomial::from_terms(a.table(), std::move(b)));
  return out;
}

/// Rebuilds `a` over `target`, matching variables by name. Any variable that
/// is absent from `target` must have exponent zero throughout.
inline Polynomial project(const Polynomial& a, TablePtr target) {
  const auto& src = *a.table();
  std::vector<std::optional<std::size_t>> map(src.size());
  for (std::size_t i = 0; i < src.size(); ++i)
    map[i] = target->index_of(src.name(i));
  std::vector<Polynomial::Term> out;
  out.reserve(a.term_count());
  std::vector<unsigned> exps(target->size());
  for (const auto& t : a.terms()) {
    std::fill(exps.begin(), exps.end(), 0u);
    for (std::size_t i = 0; i < src.size(); ++i) {
      unsigned e = t.mono.exp(i);
      if (e == 0) continue;
      if (!map[i])
        throw UsageError("project: variable " + src.name(i) +
                         " occurs but is absent from the target table");
      exps[*map[i]] = e;
    }
    out.push_back({Monomial::make(*target, exps), t.coeff});
  }
  return Polynomial::from_terms(std::move(target), std::move(out));
}

}  // namespace rdisc
