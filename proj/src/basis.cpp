#include "hbi/basis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "detail/kdtree.hpp"
#include "detail/weights.hpp"

namespace hbi {

namespace {

double int_pow(double base, int exp) {
  double result = 1.0;
  double acc = base;
  while (exp > 0) {
    if (exp & 1) result *= acc;
    acc *= acc;
    exp >>= 1;
  }
  return result;
}

std::vector<Point> canonical_nodes(const Manifold& manifold,
                                   std::span<const Point> nodes) {
  std::vector<Point> out;
  out.reserve(nodes.size());
  for (const Point& p : nodes) out.push_back(manifold.canonical(p));
  return out;
}

void require_distinct(const Manifold& manifold, std::span<const Point> nodes) {
  std::vector<const Point*> sorted;
  sorted.reserve(nodes.size());
  for (const Point& p : nodes) sorted.push_back(&p);
  std::sort(sorted.begin(), sorted.end(), [](const Point* a, const Point* b) {
    return a->ambient < b->ambient;
  });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i - 1]->ambient == sorted[i]->ambient)
      throw error(errc::duplicate_node,
                  "node set contains coincident points on the " +
                      manifold.kind_name());
  }
}

}  // namespace

WeightConfig WeightConfig::defaults_for_order(int k) {
  WeightConfig config;
  config.mu = k + 1;
  config.bump_exponent = k + 1;
  config.near_node_tol = 1e-12;
  return config;
}

void WeightConfig::validate(int k, bool localized) const {
  std::ostringstream out;
  if (!(mu > k)) {
    out << "weight exponent must exceed the global derivative order "
        << "(mu > k): got mu = " << mu << ", k = " << k;
    throw error(errc::invalid_input, out.str());
  }
  if (localized && !(delta > 0.0))
    throw error(errc::invalid_input,
                "localized weights need a positive localization radius delta");
  if (bump_exponent < k + 1) {
    out << "bump exponent must satisfy s >= k+1 for C^k cutoffs: got s = "
        << bump_exponent << ", k = " << k;
    throw error(errc::invalid_input, out.str());
  }
  if (!(near_node_tol > 0.0) || near_node_tol > 1e-8)
    throw error(errc::invalid_input,
                "near_node_tol must lie in (0, 1e-8] as a fraction of the "
                "patch diameter");
}

double alpha_power(double d, double mu) {
  if (d < 0.0) throw error(errc::invalid_input, "distance must be >= 0");
  if (!(mu > 0.0)) throw error(errc::invalid_input, "mu must be positive");
  if (d == 0.0) return 0.0;
  return std::pow(d, mu);
}

double bump(double r, double delta, int s) {
  if (!(delta > 0.0)) throw error(errc::invalid_input, "delta must be positive");
  if (s < 1) throw error(errc::invalid_input, "bump exponent must be >= 1");
  if (r >= delta) return 0.0;
  return int_pow(1.0 - r / delta, s);
}

std::vector<double> cbf_product(const Manifold& manifold, const Point& u,
                                std::span<const Point> nodes, double mu) {
  if (nodes.empty())
    throw error(errc::invalid_input, "cardinal basis needs at least one node");
  auto canon = canonical_nodes(manifold, nodes);
  require_distinct(manifold, canon);
  const std::size_t n = canon.size();
  std::vector<double> alpha(n);
  for (std::size_t j = 0; j < n; ++j)
    alpha[j] = alpha_power(manifold.geodesic_distance(u, canon[j]), mu);
  // prod_{j != i} alpha_j via prefix/suffix products.
  std::vector<double> prefix(n + 1, 1.0), suffix(n + 1, 1.0);
  for (std::size_t j = 0; j < n; ++j) prefix[j + 1] = prefix[j] * alpha[j];
  for (std::size_t j = n; j-- > 0;) suffix[j] = suffix[j + 1] * alpha[j];
  std::vector<double> g(n);
  double denom = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = prefix[i] * suffix[i + 1];
    denom += g[i];
  }
  if (!(denom > 0.0) || !std::isfinite(denom))
    throw error(errc::invalid_input,
                "product-form weights under/overflowed; use the "
                "inverse-distance form for this node count");
  for (double& x : g) x /= denom;
  return g;
}

namespace detail {

std::vector<double> inverse_weights(const Manifold& manifold, const Point& u,
                                    std::span<const Point> nodes, double mu,
                                    double near_tol) {
  const std::size_t n = nodes.size();
  std::vector<double> dist(n);
  std::size_t nearest = 0;
  for (std::size_t i = 0; i < n; ++i) {
    dist[i] = manifold.geodesic_distance(u, nodes[i]);
    if (dist[i] < dist[nearest]) nearest = i;
  }
  std::vector<double> g(n, 0.0);
  if (dist[nearest] <= near_tol || dist[nearest] == 0.0) {
    g[nearest] = 1.0;
    return g;
  }
  // Rescale by the minimum distance so d^(-mu) cannot overflow.
  double denom = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = std::pow(dist[nearest] / dist[i], mu);
    denom += g[i];
  }
  for (double& x : g) x /= denom;
  return g;
}

}  // namespace detail

std::vector<double> cbf_inverse(const Manifold& manifold, const Point& u,
                                std::span<const Point> nodes, double mu,
                                double near_tol) {
  if (nodes.empty())
    throw error(errc::invalid_input, "cardinal basis needs at least one node");
  auto canon = canonical_nodes(manifold, nodes);
  require_distinct(manifold, canon);
  return detail::inverse_weights(manifold, manifold.canonical(u), canon, mu,
                                 near_tol);
}

struct NeighborIndex::Impl {
  Manifold manifold;
  std::vector<Point> nodes;
  detail::KdTree tree;
  double pi_r = 0.0;  // sphere circumference bound, pi*R

  Impl(Manifold m, std::vector<Point> pts, detail::KdTree t)
      : manifold(std::move(m)), nodes(std::move(pts)), tree(std::move(t)) {}
};

NeighborIndex NeighborIndex::build(const Manifold& manifold,
                                   std::span<const Point> nodes) {
  if (nodes.empty())
    throw error(errc::invalid_input, "neighbor index needs at least one node");
  auto canon = canonical_nodes(manifold, nodes);
  require_distinct(manifold, canon);
  std::vector<std::vector<double>> coords;
  coords.reserve(canon.size());
  for (const Point& p : canon) coords.push_back(p.ambient);
  std::vector<double> periods;
  if (manifold.kind() == ManifoldKind::Torus) periods = manifold.periods();
  auto impl = std::make_shared<Impl>(
      manifold, std::move(canon),
      detail::KdTree(std::move(coords), std::move(periods)));
  if (manifold.kind() == ManifoldKind::Sphere)
    impl->pi_r = std::acos(-1.0) * manifold.radius();
  NeighborIndex index;
  index.impl_ = std::move(impl);
  return index;
}

std::size_t NeighborIndex::size() const {
  return impl_ ? impl_->tree.size() : 0;
}

std::vector<int> NeighborIndex::range_query(const Point& u,
                                            double geodesic_radius) const {
  if (!impl_) throw error(errc::invalid_input, "neighbor index is empty");
  if (!(geodesic_radius > 0.0)) return {};
  const Manifold& m = impl_->manifold;
  Point q = m.canonical(u);
  std::vector<int> candidates;
  if (m.kind() == ManifoldKind::Sphere && geodesic_radius >= impl_->pi_r) {
    candidates.resize(impl_->tree.size());
    std::iota(candidates.begin(), candidates.end(), 0);
  } else {
    double metric_radius = geodesic_radius;
    if (m.kind() == ManifoldKind::Sphere) {
      double r = m.radius();
      // Equivalent chord radius; tiny headroom, the geodesic predicate
      // below makes the result exact.
      metric_radius =
          2.0 * r * std::sin(geodesic_radius / (2.0 * r)) * (1.0 + 1e-12);
    }
    candidates = impl_->tree.range_query(q.ambient, metric_radius);
  }
  std::vector<int> out;
  out.reserve(candidates.size());
  for (int i : candidates)
    if (m.geodesic_distance(q, impl_->nodes[i]) < geodesic_radius)
      out.push_back(i);
  return out;
}

std::pair<int, double> NeighborIndex::nearest(const Point& u) const {
  if (!impl_) throw error(errc::invalid_input, "neighbor index is empty");
  Point q = impl_->manifold.canonical(u);
  auto [idx, metric_dist] = impl_->tree.nearest(q.ambient);
  (void)metric_dist;
  return {idx, impl_->manifold.geodesic_distance(q, impl_->nodes[idx])};
}

SparseWeights cbf_localized(const Manifold& manifold, const Point& u,
                            std::span<const Point> nodes, double mu,
                            double delta, int bump_exponent,
                            const NeighborIndex& index, double near_tol) {
  if (index.size() != nodes.size())
    throw error(errc::invalid_input,
                "neighbor index does not match the node set");
  std::vector<int> support = index.range_query(u, delta);
  if (support.empty()) throw uncovered_point_error(u.ambient, delta);

  SparseWeights out;
  out.index = std::move(support);
  out.value.resize(out.index.size());

  std::vector<double> dist(out.index.size());
  std::size_t nearest = 0;
  for (std::size_t t = 0; t < out.index.size(); ++t) {
    dist[t] = manifold.geodesic_distance(u, nodes[out.index[t]]);
    if (dist[t] < dist[nearest]) nearest = t;
  }
  if (dist[nearest] <= near_tol || dist[nearest] == 0.0) {
    out.index = {out.index[nearest]};
    out.value = {1.0};
    return out;
  }
  double denom = 0.0;
  for (std::size_t t = 0; t < out.index.size(); ++t) {
    out.value[t] = bump(dist[t], delta, bump_exponent) *
                   std::pow(dist[nearest] / dist[t], mu);
    denom += out.value[t];
  }
  for (double& x : out.value) x /= denom;
  return out;
}

}  // namespace hbi
