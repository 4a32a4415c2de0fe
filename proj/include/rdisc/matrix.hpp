#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "rdisc/detail/parallel.hpp"
#include "rdisc/polynomial.hpp"

namespace rdisc {

/// Dense square matrix of polynomials over one shared table.
class PolyMatrix {
 public:
  PolyMatrix(std::size_t dim, TablePtr table)
      : dim_(dim), table_(std::move(table)),
        entries_(dim * dim, Polynomial(table_)) {
    if (dim_ == 0) throw UsageError("PolyMatrix: zero dimension");
  }

  std::size_t dim() const { return dim_; }
  const TablePtr& table() const { return table_; }

  Polynomial& at(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
  const Polynomial& at(std::size_t i, std::size_t j) const {
    return entries_[i * dim_ + j];
  }

 private:
  std::size_t dim_;
  TablePtr table_;
  std::vector<Polynomial> entries_;
};

struct SylvesterLayout {
  std::size_t main_var;
  long deg_f;
  long deg_g;
};

/// Sylvester matrix of F and G in the variable v: a (degF+degG)-square matrix
/// whose first degG rows carry F's v-coefficients (leading first, shifted
/// right one column per row) and whose remaining degF rows carry G's.
inline std::pair<PolyMatrix, SylvesterLayout> sylvester(const Polynomial& f,
                                                        const Polynomial& g,
                                                        std::size_t v) {
  require_compatible(f.table(), g.table());
  long deg_f = f.degree_in(v);
  long deg_g = g.degree_in(v);
  if (deg_f < 1 || deg_g < 1)
    throw UsageError("sylvester: both polynomials need positive degree in v");
  auto fc = coeffs_in(f, v);
  auto gc = coeffs_in(g, v);
  std::size_t dim = static_cast<std::size_t>(deg_f + deg_g);
  PolyMatrix m(dim, f.table());
  for (std::size_t i = 0; i < static_cast<std::size_t>(deg_g); ++i)
    for (long t = 0; t <= deg_f; ++t)
      m.at(i, i + static_cast<std::size_t>(t)) = fc[static_cast<std::size_t>(deg_f - t)];
  for (std::size_t i = 0; i < static_cast<std::size_t>(deg_f); ++i)
    for (long t = 0; t <= deg_g; ++t)
      m.at(static_cast<std::size_t>(deg_g) + i, i + static_cast<std::size_t>(t)) =
          gc[static_cast<std::size_t>(deg_g - t)];
  return {std::move(m), SylvesterLayout{v, deg_f, deg_g}};
}

inline std::pair<PolyMatrix, SylvesterLayout> sylvester(const Polynomial& f,
                                                        const Polynomial& g,
                                                        std::string_view var) {
  return sylvester(f, g, f.table()->require_index(var));
}

namespace detail {

/// Bareiss one-step fraction-free elimination. Every division is exact
/// (intermediate entries are true subdeterminants). Pivot: the nonzero
/// entry of the current column with the fewest terms, ties to the lowest
/// row, which keeps runs deterministic.
inline Polynomial det_bareiss(PolyMatrix m) {
  const std::size_t n = m.dim();
  int sign = 1;
  Polynomial prev = Polynomial::one(m.table());
  for (std::size_t r = 0; r + 1 < n; ++r) {
    std::size_t pivot = n;
    std::size_t pivot_terms = 0;
    for (std::size_t i = r; i < n; ++i) {
      const auto& e = m.at(i, r);
      if (e.is_zero()) continue;
      if (pivot == n || e.term_count() < pivot_terms) {
        pivot = i;
        pivot_terms = e.term_count();
      }
    }
    if (pivot == n) return Polynomial(m.table());
    if (pivot != r) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(r, j), m.at(pivot, j));
      sign = -sign;
    }
    // Row updates are independent; fan out when the submatrix is heavy.
    std::size_t work = 0;
    for (std::size_t i = r + 1; i < n; ++i)
      for (std::size_t j = r; j < n; ++j) work += m.at(i, j).term_count();
    auto update_row = [&](std::size_t off) {
      std::size_t i = r + 1 + off;
      for (std::size_t j = r + 1; j < n; ++j) {
        Polynomial num = m.at(r, r) * m.at(i, j) - m.at(i, r) * m.at(r, j);
        m.at(i, j) = prev.is_one() ? std::move(num) : exact_div(num, prev);
      }
      m.at(i, r) = Polynomial(m.table());
    };
    if (work > 20000) {
      parallel_for(n - r - 1, update_row);
    } else {
      for (std::size_t off = 0; off < n - r - 1; ++off) update_row(off);
    }
    prev = m.at(r, r);
  }
  Polynomial det = m.at(n - 1, n - 1);
  return sign < 0 ? -det : det;
}

}  // namespace detail

/// Exact determinant. Structural zeros are peeled off first (an empty
/// row/column gives 0; a row/column with a single nonzero entry is expanded
/// as a cofactor), then Bareiss elimination handles the dense core.
inline Polynomial det_fraction_free(const PolyMatrix& input) {
  PolyMatrix m = input;
  int sign = 1;
  Polynomial factor = Polynomial::one(m.table());

  while (true) {
    const std::size_t n = m.dim();
    if (n == 1) return sign < 0 ? -(factor * m.at(0, 0)) : factor * m.at(0, 0);

    std::size_t exp_row = n, exp_col = n;
    bool found_single = false;
    for (std::size_t i = 0; i < n && !found_single; ++i) {
      std::size_t nonzero = 0, col = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (!m.at(i, j).is_zero()) {
          ++nonzero;
          col = j;
        }
      if (nonzero == 0) return Polynomial(m.table());
      if (nonzero == 1) {
        exp_row = i;
        exp_col = col;
        found_single = true;
      }
    }
    for (std::size_t j = 0; j < n && !found_single; ++j) {
      std::size_t nonzero = 0, row = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (!m.at(i, j).is_zero()) {
          ++nonzero;
          row = i;
        }
      if (nonzero == 0) return Polynomial(m.table());
      if (nonzero == 1) {
        exp_row = row;
        exp_col = j;
        found_single = true;
      }
    }
    if (!found_single) break;

    factor *= m.at(exp_row, exp_col);
    if ((exp_row + exp_col) % 2 != 0) sign = -sign;
    PolyMatrix minor(n - 1, m.table());
    for (std::size_t i = 0, mi = 0; i < n; ++i) {
      if (i == exp_row) continue;
      for (std::size_t j = 0, mj = 0; j < n; ++j) {
        if (j == exp_col) continue;
        minor.at(mi, mj) = std::move(m.at(i, j));
        ++mj;
      }
      ++mi;
    }
    m = std::move(minor);
  }

  Polynomial core = detail::det_bareiss(std::move(m));
  Polynomial det = factor * core;
  return sign < 0 ? -det : det;
}

/// Res(F, G, v) as the determinant of the Sylvester matrix; v is eliminated.
inline Polynomial resultant(const Polynomial& f, const Polynomial& g,
                            std::size_t v) {
  auto [m, layout] = sylvester(f, g, v);
  Polynomial det = det_fraction_free(m);
  if (det.degree_in(v) > 0)
    throw std::logic_error("resultant: main variable survived elimination");
  return det;
}

inline Polynomial resultant(const Polynomial& f, const Polynomial& g,
                            std::string_view var) {
  return resultant(f, g, f.table()->require_index(var));
}

namespace detail {

/// Fraction-free determinant of an integer matrix. Deliberately independent
/// of the polynomial path so the two can cross-check each other.
inline Int int_det_bareiss(std::vector<std::vector<Int>> m) {
  const std::size_t n = m.size();
  int sign = 1;
  Int prev = 1;
  for (std::size_t r = 0; r + 1 < n; ++r) {
    std::size_t pivot = n;
    for (std::size_t i = r; i < n; ++i) {
      if (m[i][r] == 0) continue;
      if (pivot == n ||
          mpz_cmpabs(m[i][r].get_mpz_t(), m[pivot][r].get_mpz_t()) < 0)
        pivot = i;
    }
    if (pivot == n) return Int(0);
    if (pivot != r) {
      std::swap(m[r], m[pivot]);
      sign = -sign;
    }
    for (std::size_t i = r + 1; i < n; ++i) {
      for (std::size_t j = r + 1; j < n; ++j) {
        Int num = m[r][r] * m[i][j] - m[i][r] * m[r][j];
        m[i][j] = int_div_exact(num, prev);
      }
      m[i][r] = 0;
    }
    prev = m[r][r];
  }
  Int det = m[n - 1][n - 1];
  return sign < 0 ? Int(-det) : det;
}

/// Specializes every coefficient of `f` (viewed in `v`) at the point.
/// Returns ascending v-coefficients, including a possibly-zero leading slot.
inline std::vector<Int> specialize_univariate(const Polynomial& f, std::size_t v,
                                              std::span<const Int> point) {
  auto fc = coeffs_in(f, v);
  std::vector<Int> out;
  out.reserve(fc.size());
  for (const auto& c : fc) out.push_back(evaluate(c, point));
  return out;
}

}  // namespace detail

/// Independent numeric cross-check: the resultant of the two specialized
/// univariate integer polynomials, via an integer Sylvester determinant.
/// The point assigns every variable except v (the v slot is ignored); if a
/// leading coefficient vanishes under specialization the homomorphism does
/// not apply and the caller must resample.
inline Int resultant_eval_oracle(const Polynomial& f, const Polynomial& g,
                                 std::size_t v, std::span<const Int> point) {
  long deg_f = f.degree_in(v);
  long deg_g = g.degree_in(v);
  if (deg_f < 1 || deg_g < 1)
    throw UsageError("resultant_eval_oracle: positive degree in v required");
  auto fu = detail::specialize_univariate(f, v, point);
  auto gu = detail::specialize_univariate(g, v, point);
  if (fu.back() == 0 || gu.back() == 0)
    throw LeadingCoefficientVanishedError(
        "leading coefficient vanished under specialization");
  std::size_t dim = static_cast<std::size_t>(deg_f + deg_g);
  std::vector<std::vector<Int>> m(dim, std::vector<Int>(dim, Int(0)));
  for (std::size_t i = 0; i < static_cast<std::size_t>(deg_g); ++i)
    for (long t = 0; t <= deg_f; ++t)
      m[i][i + static_cast<std::size_t>(t)] = fu[static_cast<std::size_t>(deg_f - t)];
  for (std::size_t i = 0; i < static_cast<std::size_t>(deg_f); ++i)
    for (long t = 0; t <= deg_g; ++t)
      m[static_cast<std::size_t>(deg_g) + i][i + static_cast<std::size_t>(t)] =
          gu[static_cast<std::size_t>(deg_g - t)];
  return detail::int_det_bareiss(std::move(m));
}

inline Int resultant_eval_oracle(const Polynomial& f, const Polynomial& g,
                                 std::string_view var, std::span<const Int> point) {
  return resultant_eval_oracle(f, g, f.table()->require_index(var), point);
}

}  // namespace rdisc
