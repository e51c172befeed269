#pragma once

#include <memory>
#include <span>
#include <vector>

#include "hbi/geometry.hpp"

namespace hbi {

/// Parameters of the distance-power cardinal weights.
///
/// `mu` must strictly exceed the global derivative order k of the data set
/// (order-k derivatives of d^mu need not vanish at mu = k). `delta` is the
/// localization radius, used only by the localized form. `bump_exponent` is
/// the s in the truncated-power cutoff (1 - r/delta)^s, which is C^(s-1) at
/// the support boundary, so s >= k+1. `near_node_tol` is the radius of the
/// exact-cardinal short-circuit, expressed as a fraction of the patch
/// diameter.
struct WeightConfig {
  double mu = 1.0;
  double delta = 0.0;
  int bump_exponent = 1;
  double near_node_tol = 1e-12;

  static WeightConfig defaults_for_order(int k);

  /// Throws errc::invalid_input naming the violated rule.
  void validate(int k, bool localized) const;
};

/// alpha(u, w) = d^mu: vanishes only at d = 0.
double alpha_power(double d, double mu);

/// Truncated-power cutoff: (1 - r/delta)^s for r < delta, else 0.
double bump(double r, double delta, int s);

/// Cardinal basis functions in the Cheney product form
///   g_i(u) = prod_{j != i} alpha(u, z_j) / sum_k prod_{j != k} alpha(u, z_j)
/// with alpha = d_g^mu. Reference implementation for small n; the products
/// under/overflow for large node sets.
std::vector<double> cbf_product(const Manifold& manifold, const Point& u,
                                std::span<const Point> nodes, double mu);

/// Inverse-distance form g_i(u) = d_g(u,z_i)^(-mu) / sum_k d_g(u,z_k)^(-mu),
/// evaluated in the overflow-safe rescaled form (d_min/d_i)^mu. When the
/// nearest node is closer than `near_tol` (an absolute geodesic distance),
/// returns that node's exact cardinal unit vector.
std::vector<double> cbf_inverse(const Manifold& manifold, const Point& u,
                                std::span<const Point> nodes, double mu,
                                double near_tol);

/// Range-query index over a node set. Queries are by geodesic radius; on the
/// sphere the radius is converted to the equivalent chord 2R sin(d/(2R)) for
/// the ambient-space search, and candidates are re-checked against the
/// geodesic predicate so results match a brute-force scan exactly.
class NeighborIndex {
 public:
  NeighborIndex() = default;

  static NeighborIndex build(const Manifold& manifold,
                             std::span<const Point> nodes);

  /// Indices {i : d_g(u, z_i) < radius}, ascending.
  std::vector<int> range_query(const Point& u, double geodesic_radius) const;
  /// (index, geodesic distance) of the closest node.
  std::pair<int, double> nearest(const Point& u) const;

  std::size_t size() const;
  bool empty() const { return size() == 0; }

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

struct SparseWeights {
  std::vector<int> index;    // ascending node indices with nonzero weight
  std::vector<double> value;
};

/// Localized weights g~_i(u) = tau_i(u) d_g(u,z_i)^(-mu) / sum_k tau_k ...,
/// nonzero only for nodes within `delta` of u. Throws uncovered_point_error
/// when no node is in range.
SparseWeights cbf_localized(const Manifold& manifold, const Point& u,
                            std::span<const Point> nodes, double mu,
                            double delta, int bump_exponent,
                            const NeighborIndex& index, double near_tol);

}  // namespace hbi
