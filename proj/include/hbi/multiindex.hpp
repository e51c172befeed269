#pragma once

#include <compare>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "hbi/errors.hpp"
#include "hbi/geometry.hpp"

namespace hbi {

/// Derivative multi-index (b_1, ..., b_m), all components >= 0.
class MultiIndex {
 public:
  explicit MultiIndex(std::vector<int> components);
  static MultiIndex zero(int dim);
  /// Parses the comma-joined form used in node files, e.g. "1,0".
  static MultiIndex parse(const std::string& text, int expected_dim = -1);

  const std::vector<int>& components() const { return components_; }
  int dim() const { return static_cast<int>(components_.size()); }
  int order() const { return order_; }
  bool is_zero() const { return order_ == 0; }

  std::string str() const;

  auto operator<=>(const MultiIndex&) const = default;

 private:
  std::vector<int> components_;
  int order_ = 0;
};

/// Finite set of distinct multi-indices; always contains the zero index.
class MultiIndexSet {
 public:
  explicit MultiIndexSet(std::vector<MultiIndex> indices);

  static MultiIndexSet lagrange(int dim);               // { 0 }
  static MultiIndexSet complete(int dim, int order);    // all |b| <= order

  int dim() const;
  std::size_t size() const { return indices_.size(); }
  bool contains(const MultiIndex& beta) const;
  const std::vector<MultiIndex>& indices() const { return indices_; }

  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }

  bool operator==(const MultiIndexSet&) const = default;

 private:
  std::vector<MultiIndex> indices_;  // sorted, unique
};

/// k = max |beta| over all indices in all sets.
int global_order_k(std::span<const MultiIndexSet> sets);

/// Largest q such that every multi-index of order <= q belongs to the set.
int completeness_order(const MultiIndexSet& set);

/// beta_1! * ... * beta_m!
double factorial_product(const MultiIndex& beta);

/// dv^beta by exponentiation-by-squaring (no floating pow at integer
/// exponents).
double monomial(std::span<const double> dv, const MultiIndex& beta);

/// Incomplete Taylor expansion sum_{beta in deltas} data(beta) *
/// (v - v_center)^beta / beta!. The data keys must equal `deltas` exactly.
double taylor_eval(const Vec& v, const Vec& v_center,
                   const MultiIndexSet& deltas,
                   const std::map<MultiIndex, double>& data);

}  // namespace hbi
