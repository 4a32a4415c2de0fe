#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "rdisc/errors.hpp"

namespace rdisc {

class VarTable;
using TablePtr = std::shared_ptr<const VarTable>;

/// Ordered variable table with quasi-homogeneous weights. The order is fixed
/// at construction; every Monomial/Polynomial refers back to one table.
///
/// Convention for the polynomial-family tables: variable `x` has weight 1 and
/// coefficient `aj` has weight j.
class VarTable {
 public:
  VarTable(std::vector<std::string> names, std::vector<unsigned> weights)
      : names_(std::move(names)), weights_(std::move(weights)) {
    if (names_.empty()) throw UsageError("VarTable: empty variable list");
    if (names_.size() != weights_.size())
      throw UsageError("VarTable: names/weights length mismatch");
    std::unordered_set<std::string_view> seen;
    for (const auto& n : names_) {
      if (n.empty()) throw UsageError("VarTable: empty variable name");
      if (!seen.insert(n).second)
        throw UsageError("VarTable: duplicate variable name " + n);
    }
  }

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  unsigned weight(std::size_t i) const { return weights_[i]; }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return i;
    return std::nullopt;
  }

  std::size_t require_index(std::string_view name) const {
    auto i = index_of(name);
    if (!i) throw UsageError("unknown variable " + std::string(name));
    return *i;
  }

  bool operator==(const VarTable& other) const {
    return names_ == other.names_ && weights_ == other.weights_;
  }
  bool operator!=(const VarTable& other) const { return !(*this == other); }

  /// {x, a1, ..., an} with weights {1, 1, ..., n}.
  static TablePtr family(int n) {
    require_degree(n);
    std::vector<std::string> names;
    std::vector<unsigned> weights;
    names.emplace_back("x");
    weights.push_back(1);
    append_coefficients(n, names, weights);
    return std::make_shared<VarTable>(std::move(names), std::move(weights));
  }

  /// {a1, ..., an} with weights {1, ..., n}; the space the discriminant and
  /// every derived polynomial live in once x has been eliminated.
  static TablePtr coefficients(int n) {
    require_degree(n);
    std::vector<std::string> names;
    std::vector<unsigned> weights;
    append_coefficients(n, names, weights);
    return std::make_shared<VarTable>(std::move(names), std::move(weights));
  }

 private:
  static void require_degree(int n) {
    if (n < 1) throw UsageError("family degree must be >= 1");
  }
  static void append_coefficients(int n, std::vector<std::string>& names,
                                  std::vector<unsigned>& weights) {
    for (int j = 1; j <= n; ++j) {
      names.push_back("a" + std::to_string(j));
      weights.push_back(static_cast<unsigned>(j));
    }
  }

  std::vector<std::string> names_;
  std::vector<unsigned> weights_;
};

/// Two tables are interchangeable when they are the same object or equal by
/// value; operations mixing incompatible tables are usage errors.
inline bool tables_compatible(const TablePtr& a, const TablePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

inline void require_compatible(const TablePtr& a, const TablePtr& b) {
  if (!tables_compatible(a, b))
    throw UsageError("operands use different variable tables");
}

}  // namespace rdisc
