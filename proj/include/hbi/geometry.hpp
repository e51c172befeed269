#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hbi/errors.hpp"

namespace hbi {

using Vec = std::vector<double>;

enum class ManifoldKind { Sphere, Torus, Euclidean };

/// A point on a manifold, stored in embedding coordinates: 3 reals for the
/// sphere, m reals for the flat torus and Euclidean space. `chart` is an
/// optional cache of chart coordinates filled in by Chart::inverse; the
/// library never reads it back.
struct Point {
  Vec ambient;
  std::optional<Vec> chart;

  Point() = default;
  explicit Point(Vec a) : ambient(std::move(a)) {}
  Point(std::initializer_list<double> a) : ambient(a) {}

  bool same_position(const Point& other) const {
    return ambient == other.ambient;
  }
};

/// Geometry descriptor: the unit/scaled 2-sphere embedded in R^3, an
/// m-dimensional flat torus R^m / (P_1 Z x ... x P_m Z), or Euclidean R^m.
class Manifold {
 public:
  static Manifold sphere(double radius);
  static Manifold torus(Vec periods);
  static Manifold euclidean(int dim);

  ManifoldKind kind() const { return kind_; }
  /// Intrinsic dimension m (2 for the sphere).
  int dim() const { return dim_; }
  /// Dimension of the embedding coordinates (3 for the sphere, m otherwise).
  int ambient_dim() const { return kind_ == ManifoldKind::Sphere ? 3 : dim_; }
  double radius() const;            // sphere only
  const Vec& periods() const;       // torus only

  /// Arc-length distance. Sphere: great-circle via atan2 of cross/dot
  /// products; torus: per-component wrapped differences under the Euclidean
  /// norm; Euclidean: plain norm. Throws invalid_point for points off the
  /// manifold or with the wrong coordinate count.
  double geodesic_distance(const Point& u, const Point& w) const;

  bool contains(const Point& u) const;
  /// Throws errc::invalid_point when `u` fails contains().
  void require_point(const Point& u) const;
  /// Torus points are wrapped into the fundamental cell [0, P_j).
  Point canonical(Point u) const;

  bool operator==(const Manifold& other) const = default;

  std::string kind_name() const;

 private:
  Manifold(ManifoldKind kind, int dim, double radius, Vec periods)
      : kind_(kind), dim_(dim), radius_(radius), periods_(std::move(periods)) {}

  ManifoldKind kind_;
  int dim_;
  double radius_ = 0.0;
  Vec periods_;
};

/// Interpolation domain: the open geodesic ball of the given radius about
/// `center`. Sphere patches must satisfy geodesic_radius < pi*R so a single
/// stereographic chart covers them; torus patches must stay inside the
/// injectivity radius min_j P_j / 2.
class Patch {
 public:
  Patch(Manifold manifold, Point center, double geodesic_radius);

  const Manifold& manifold() const { return manifold_; }
  const Point& center() const { return center_; }
  double geodesic_radius() const { return radius_; }
  /// Geodesic diameter bound, used to scale the near-node tolerance.
  double diameter() const { return 2.0 * radius_; }

  bool contains(const Point& u) const;

 private:
  Manifold manifold_;
  Point center_;
  double radius_;
};

enum class ChartKind { Stereographic, PeriodicUnwrap, Identity };

/// Chart map v = phi(u) onto R^m with phi(center) = 0.
///
/// Sphere: stereographic projection from the antipode of `center`; in the
/// frame where the center is the north pole, (x, y, z) maps to
/// R*(x/R) / (1 + z/R), so the unit-sphere chart centered at the north pole
/// is exactly (x/(1+z), y/(1+z)). Torus: coordinates unwrapped into the
/// period cell centered at `center`. Euclidean: translation by the center.
class Chart {
 public:
  Chart(ChartKind kind, Manifold manifold, Point center);

  /// The canonical chart kind for the patch's manifold, centered at the
  /// patch center.
  static Chart for_patch(const Patch& patch);

  ChartKind kind() const { return kind_; }
  const Manifold& manifold() const { return manifold_; }
  const Point& center() const { return center_; }
  int dim() const { return manifold_.dim(); }

  Vec forward(const Point& u) const;
  Point inverse(const Vec& v) const;

  std::string kind_name() const;

  bool operator==(const Chart& other) const;

 private:
  ChartKind kind_;
  Manifold manifold_;
  Point center_;
  // Orthonormal tangent frame at the center (sphere only), chosen
  // deterministically from the coordinate axes.
  Vec e1_, e2_, up_;
};

enum class SampleStrategy { UniformRandom, QuasiUniform };

/// Deterministic point sets inside a patch. UniformRandom draws i.i.d.
/// area-uniform points; QuasiUniform uses a Fibonacci cap lattice (sphere)
/// or a Halton sequence (torus/Euclidean), phase-shifted by the seed, with
/// fill distance shrinking like n^(-1/m).
std::vector<Point> sample_patch(const Patch& patch, int n,
                                SampleStrategy strategy, std::uint64_t seed);

/// Measured chart Lipschitz constant: max over point pairs of
/// ||v(u)-v(w)|| / d_g(u,w). Recorded per patch by the convergence harness.
double chart_lipschitz(const Chart& chart, std::span<const Point> points);

}  // namespace hbi
