#pragma once

#include <map>
#include <span>
#include <vector>

#include "hbi/basis.hpp"
#include "hbi/geometry.hpp"
#include "hbi/multiindex.hpp"

namespace hbi {

/// A node z_i with its multi-index set Delta_i and the derivative values
/// D^beta f(z_i), expressed in the chart's coordinates. The value map keys
/// must equal the index set exactly.
class HermiteNode {
 public:
  HermiteNode(Point point, MultiIndexSet delta_set,
              std::map<MultiIndex, double> values);

  /// Lagrange node: Delta = {0} with a single function value.
  static HermiteNode lagrange(Point point, int dim, double value);

  const Point& point() const { return point_; }
  const MultiIndexSet& delta_set() const { return deltas_; }
  const std::map<MultiIndex, double>& values() const { return values_; }
  double value(const MultiIndex& beta) const;

 private:
  Point point_;
  MultiIndexSet deltas_;
  std::map<MultiIndex, double> values_;
};

enum class WeightMode { Global, Localized };

const char* weight_mode_name(WeightMode mode);

/// Residuals of the interpolation conditions, estimated by central finite
/// differences of H in chart coordinates.
struct ConditionReport {
  struct Entry {
    int node;
    MultiIndex beta;
    double residual;  // |D^beta H(z_i) - stored value|
  };

  std::vector<Entry> entries;
  double fd_step = 0.0;
  int max_order = 0;

  /// Max residual over entries of the given derivative order.
  double max_residual(int order) const;
  /// Max |stored value| of the given order; scale for relative residuals.
  double value_scale(int order) const;

 private:
  friend class Interpolant;
  std::vector<double> max_residual_;  // per order 0..max_order
  std::vector<double> value_scale_;
};

struct InterpolantOptions {
  /// Fall back to global weights at evaluation points not covered by any
  /// node's delta-ball instead of raising uncovered_point. Off by default
  /// so locality benchmarks cannot be silently corrupted.
  bool fallback_global = false;
};

/// Assembled Hermite-Birkhoff interpolant
///   H(u) = sum_i T(u; f, z_i, Delta_i) g_i(u)
/// with the configured cardinal weights (global inverse-distance or
/// localized). Immutable once built; evaluation is pure and thread-safe.
class Interpolant {
 public:
  using Options = InterpolantOptions;

  static Interpolant build(const Patch& patch, const Chart& chart,
                           std::vector<HermiteNode> nodes,
                           WeightConfig weights, WeightMode mode,
                           Options options = {});

  double evaluate(const Point& u) const;
  /// Elementwise evaluate, order-preserving; large batches are partitioned
  /// across threads. Per-point failures carry the point index.
  std::vector<double> evaluate_batch(std::span<const Point> points) const;

  /// Basis function g_{i,beta}(u) = (v - v(z_i))^beta / beta! * g_i(u);
  /// beta must belong to node i's set.
  double evaluate_basis(int node, const MultiIndex& beta, const Point& u) const;

  /// Incomplete Taylor expansion T(u; f, z_i, Delta_i).
  double taylor_term(int node, const Point& u) const;

  /// Dense cardinal weights g_i(u) for the configured mode (zeros outside
  /// the support in localized mode).
  std::vector<double> weights_at(const Point& u) const;
  SparseWeights sparse_weights_at(const Point& u) const;

  ConditionReport verify_conditions(double fd_step) const;

  int node_count() const { return static_cast<int>(nodes_.size()); }
  std::span<const HermiteNode> nodes() const { return nodes_; }
  /// Global derivative order k = max |beta|.
  int order_k() const { return order_k_; }
  /// min_i completeness_order(Delta_i); the error bound exponent is q+1.
  int completeness_q() const { return completeness_q_; }
  /// completeness_order(Delta_i) of one node.
  int node_completeness(int node) const;
  WeightMode mode() const { return mode_; }
  const WeightConfig& weights() const { return weights_; }
  const Patch& patch() const { return patch_; }
  const Chart& chart() const { return chart_; }
  const Manifold& manifold() const { return patch_.manifold(); }
  const NeighborIndex& neighbor_index() const { return index_; }
  /// Absolute short-circuit radius: near_node_tol * patch diameter.
  double near_tol() const { return near_tol_; }
  bool lagrange_only() const { return order_k_ == 0; }

 private:
  Interpolant(Patch patch, Chart chart, std::vector<HermiteNode> nodes,
              WeightConfig weights, WeightMode mode, Options options);

  double evaluate_with_weights(const Point& u, const SparseWeights& g) const;
  double taylor_term_chart(int node, const Vec& v) const;
  double min_node_separation() const;

  Patch patch_;
  Chart chart_;
  std::vector<HermiteNode> nodes_;
  WeightConfig weights_;
  WeightMode mode_;
  Options options_;
  NeighborIndex index_;
  int order_k_ = 0;
  int completeness_q_ = 0;
  std::vector<int> node_q_;
  double near_tol_ = 0.0;

  // Precomputed per node: chart coordinates and value/beta! coefficients.
  struct TaylorData {
    Vec v_center;
    std::vector<MultiIndex> betas;
    std::vector<double> coeffs;
  };
  std::vector<TaylorData> taylor_;
};

}  // namespace hbi
