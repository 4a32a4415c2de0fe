#pragma once

#include <array>
#include <cstdint>
#include <cstddef>
#include <span>

#include "rdisc/errors.hpp"
#include "rdisc/vartable.hpp"

namespace rdisc {

/// Hard cap on table size; the family tables for n <= 8 need at most 9 slots.
inline constexpr std::size_t kMaxVars = 12;
inline constexpr unsigned kMaxExponent = 60000;

/// Exponent vector over a fixed VarTable, with the weighted degree cached so
/// that term-order comparisons never touch the table.
///
/// Total order: graded by quasi-homogeneous weighted degree, ties broken
/// lexicographically in table order (a higher exponent on an earlier
/// variable wins; the family tables put x first, so x is highest).
class Monomial {
 public:
  Monomial() : exps_{}, nvars_(0), wdeg_(0) {}

  static Monomial unit(std::size_t nvars) {
    check_nvars(nvars);
    Monomial m;
    m.nvars_ = static_cast<std::uint8_t>(nvars);
    return m;
  }

  static Monomial make(const VarTable& table, std::span<const unsigned> exps) {
    if (exps.size() != table.size())
      throw UsageError("Monomial: exponent count does not match table");
    check_nvars(table.size());
    Monomial m;
    m.nvars_ = static_cast<std::uint8_t>(table.size());
    for (std::size_t i = 0; i < exps.size(); ++i) {
      if (exps[i] > kMaxExponent) throw UsageError("Monomial: exponent too large");
      m.exps_[i] = static_cast<std::uint16_t>(exps[i]);
      m.wdeg_ += static_cast<std::uint64_t>(exps[i]) * table.weight(i);
    }
    return m;
  }

  /// Single-variable power v^e.
  static Monomial power(const VarTable& table, std::size_t var, unsigned e) {
    if (var >= table.size()) throw UsageError("Monomial: variable out of range");
    Monomial m = unit(table.size());
    if (e > kMaxExponent) throw UsageError("Monomial: exponent too large");
    m.exps_[var] = static_cast<std::uint16_t>(e);
    m.wdeg_ = static_cast<std::uint64_t>(e) * table.weight(var);
    return m;
  }

  std::size_t nvars() const { return nvars_; }
  unsigned exp(std::size_t i) const { return exps_[i]; }
  std::uint64_t weighted_degree() const { return wdeg_; }

  bool is_unit() const {
    for (std::size_t i = 0; i < nvars_; ++i)
      if (exps_[i] != 0) return false;
    return true;
  }

  bool divides(const Monomial& m) const {
    for (std::size_t i = 0; i < nvars_; ++i)
      if (exps_[i] > m.exps_[i]) return false;
    return true;
  }

  Monomial times(const Monomial& o) const {
    Monomial r;
    r.nvars_ = nvars_;
    for (std::size_t i = 0; i < nvars_; ++i) {
      unsigned e = static_cast<unsigned>(exps_[i]) + o.exps_[i];
      if (e > kMaxExponent) throw UsageError("Monomial: exponent overflow");
      r.exps_[i] = static_cast<std::uint16_t>(e);
    }
    r.wdeg_ = wdeg_ + o.wdeg_;
    return r;
  }

  /// Quotient this / o; requires o.divides(*this).
  Monomial divided_by(const Monomial& o) const {
    Monomial r;
    r.nvars_ = nvars_;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (o.exps_[i] > exps_[i]) throw UsageError("Monomial: inexact quotient");
      r.exps_[i] = static_cast<std::uint16_t>(exps_[i] - o.exps_[i]);
    }
    r.wdeg_ = wdeg_ - o.wdeg_;
    return r;
  }

  /// Copy with the exponent of `var` forced to zero.
  Monomial without(std::size_t var, const VarTable& table) const {
    Monomial r = *this;
    r.wdeg_ -= static_cast<std::uint64_t>(r.exps_[var]) * table.weight(var);
    r.exps_[var] = 0;
    return r;
  }

  bool all_even() const {
    for (std::size_t i = 0; i < nvars_; ++i)
      if (exps_[i] % 2 != 0) return false;
    return true;
  }

  Monomial halved() const {
    Monomial r = *this;
    for (std::size_t i = 0; i < nvars_; ++i) r.exps_[i] = static_cast<std::uint16_t>(r.exps_[i] / 2);
    r.wdeg_ = wdeg_ / 2;
    return r;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    if (a.nvars_ != b.nvars_ || a.wdeg_ != b.wdeg_) return false;
    for (std::size_t i = 0; i < a.nvars_; ++i)
      if (a.exps_[i] != b.exps_[i]) return false;
    return true;
  }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

  /// <0, 0, >0 as a is below, equal to, above b in the term order.
  static int compare(const Monomial& a, const Monomial& b) {
    if (a.wdeg_ != b.wdeg_) return a.wdeg_ < b.wdeg_ ? -1 : 1;
    for (std::size_t i = 0; i < a.nvars_; ++i)
      if (a.exps_[i] != b.exps_[i]) return a.exps_[i] < b.exps_[i] ? -1 : 1;
    return 0;
  }

  struct Hash {
    std::size_t operator()(const Monomial& m) const {
      std::uint64_t h = 1469598103934665603ull;
      for (std::size_t i = 0; i < m.nvars_; ++i) {
        h ^= m.exps_[i];
        h *= 1099511628211ull;
      }
      return static_cast<std::size_t>(h);
    }
  };

 private:
  static void check_nvars(std::size_t n) {
    if (n > kMaxVars) throw UsageError("variable table exceeds kMaxVars");
  }

  std::array<std::uint16_t, kMaxVars> exps_;
  std::uint8_t nvars_;
  std::uint64_t wdeg_;
};

inline bool term_order_less(const Monomial& a, const Monomial& b) {
  return Monomial::compare(a, b) < 0;
}

}  // namespace rdisc
