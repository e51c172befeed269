#include "hbi/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "detail/rng.hpp"

namespace hbi {

namespace {

constexpr double kGoldenConjugate = 0.6180339887498949;  // (sqrt(5)-1)/2

double dot3(const Vec& a, const Vec& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

Vec cross3(const Vec& a, const Vec& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

double norm(std::span<const double> a) {
  double s = 0.0;
  for (double x : a) s += x * x;
  return std::sqrt(s);
}

// Wrap x into [-period/2, period/2].
double wrap_centered(double x, double period) {
  return std::remainder(x, period);
}

// Wrap x into [0, period).
double wrap_cell(double x, double period) {
  double w = std::fmod(x, period);
  if (w < 0.0) w += period;
  if (w >= period) w = 0.0;  // fmod can land on period after the correction
  return w;
}

std::string point_repr(const Point& u) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < u.ambient.size(); ++i) {
    if (i) out << ", ";
    out << u.ambient[i];
  }
  out << ")";
  return out.str();
}

// Deterministic orthonormal tangent frame at a unit vector: e1 from the
// coordinate axis least aligned with c_hat, e2 = c_hat x e1.
void sphere_frame(const Vec& c_hat, Vec& e1, Vec& e2) {
  int axis = 0;
  double best = std::abs(c_hat[0]);
  for (int k = 1; k < 3; ++k) {
    if (std::abs(c_hat[k]) < best) {
      best = std::abs(c_hat[k]);
      axis = k;
    }
  }
  Vec a = {0.0, 0.0, 0.0};
  a[axis] = 1.0;
  double proj = dot3(a, c_hat);
  e1 = {a[0] - proj * c_hat[0], a[1] - proj * c_hat[1], a[2] - proj * c_hat[2]};
  double len = norm(e1);
  for (double& x : e1) x /= len;
  e2 = cross3(c_hat, e1);
}

}  // namespace

Manifold Manifold::sphere(double radius) {
  if (!(radius > 0.0))
    throw error(errc::invalid_input, "sphere radius must be positive");
  return Manifold(ManifoldKind::Sphere, 2, radius, {});
}

Manifold Manifold::torus(Vec periods) {
  if (periods.empty())
    throw error(errc::invalid_input, "torus needs at least one period");
  for (double p : periods)
    if (!(p > 0.0))
      throw error(errc::invalid_input, "torus periods must be positive");
  const int dim = static_cast<int>(periods.size());
  return Manifold(ManifoldKind::Torus, dim, 0.0, std::move(periods));
}

Manifold Manifold::euclidean(int dim) {
  if (dim < 1)
    throw error(errc::invalid_input, "euclidean dimension must be >= 1");
  return Manifold(ManifoldKind::Euclidean, dim, 0.0, {});
}

double Manifold::radius() const {
  if (kind_ != ManifoldKind::Sphere)
    throw error(errc::invalid_input, "radius() is sphere-only");
  return radius_;
}

const Vec& Manifold::periods() const {
  if (kind_ != ManifoldKind::Torus)
    throw error(errc::invalid_input, "periods() is torus-only");
  return periods_;
}

bool Manifold::contains(const Point& u) const {
  if (static_cast<int>(u.ambient.size()) != ambient_dim()) return false;
  for (double x : u.ambient)
    if (!std::isfinite(x)) return false;
  if (kind_ == ManifoldKind::Sphere)
    return std::abs(norm(u.ambient) - radius_) <= 1e-12 * radius_;
  return true;
}

void Manifold::require_point(const Point& u) const {
  if (contains(u)) return;
  std::ostringstream out;
  out << "point " << point_repr(u) << " is not on the " << kind_name();
  if (kind_ == ManifoldKind::Sphere &&
      static_cast<int>(u.ambient.size()) == 3) {
    out << " (|u| = " << norm(u.ambient) << ", R = " << radius_ << ")";
  }
  throw error(errc::invalid_point, out.str());
}

Point Manifold::canonical(Point u) const {
  require_point(u);
  if (kind_ == ManifoldKind::Torus) {
    for (int j = 0; j < dim_; ++j)
      u.ambient[j] = wrap_cell(u.ambient[j], periods_[j]);
  }
  return u;
}

double Manifold::geodesic_distance(const Point& u, const Point& w) const {
  require_point(u);
  require_point(w);
  switch (kind_) {
    case ManifoldKind::Sphere: {
      Vec a = u.ambient, b = w.ambient;
      for (double& x : a) x /= radius_;
      for (double& x : b) x /= radius_;
      // atan2 of cross/dot stays accurate near 0 and pi, unlike acos.
      return radius_ * std::atan2(norm(cross3(a, b)), dot3(a, b));
    }
    case ManifoldKind::Torus: {
      double s = 0.0;
      for (int j = 0; j < dim_; ++j) {
        double d = wrap_centered(u.ambient[j] - w.ambient[j], periods_[j]);
        s += d * d;
      }
      return std::sqrt(s);
    }
    case ManifoldKind::Euclidean: {
      double s = 0.0;
      for (int j = 0; j < dim_; ++j) {
        double d = u.ambient[j] - w.ambient[j];
        s += d * d;
      }
      return std::sqrt(s);
    }
  }
  return 0.0;
}

std::string Manifold::kind_name() const {
  switch (kind_) {
    case ManifoldKind::Sphere: return "sphere";
    case ManifoldKind::Torus: return "torus";
    case ManifoldKind::Euclidean: return "euclidean";
  }
  return "unknown";
}

Patch::Patch(Manifold manifold, Point center, double geodesic_radius)
    : manifold_(std::move(manifold)),
      center_(manifold_.canonical(std::move(center))),
      radius_(geodesic_radius) {
  if (!(radius_ > 0.0))
    throw error(errc::invalid_input, "patch geodesic_radius must be positive");
  if (manifold_.kind() == ManifoldKind::Sphere) {
    double limit = std::acos(-1.0) * manifold_.radius();
    if (!(radius_ < limit))
      throw error(errc::invalid_input,
                  "sphere patch radius must be < pi*R to stay inside a "
                  "single chart away from the cut locus");
  }
  if (manifold_.kind() == ManifoldKind::Torus) {
    double limit = *std::min_element(manifold_.periods().begin(),
                                     manifold_.periods().end()) /
                   2.0;
    if (!(radius_ < limit))
      throw error(errc::invalid_input,
                  "torus patch radius must be < min period / 2 so the "
                  "unwrap chart is a homeomorphism");
  }
}

bool Patch::contains(const Point& u) const {
  return manifold_.geodesic_distance(u, center_) < radius_;
}

Chart::Chart(ChartKind kind, Manifold manifold, Point center)
    : kind_(kind),
      manifold_(std::move(manifold)),
      center_(manifold_.canonical(std::move(center))) {
  const bool ok =
      (kind_ == ChartKind::Stereographic &&
       manifold_.kind() == ManifoldKind::Sphere) ||
      (kind_ == ChartKind::PeriodicUnwrap &&
       manifold_.kind() == ManifoldKind::Torus) ||
      (kind_ == ChartKind::Identity &&
       manifold_.kind() == ManifoldKind::Euclidean);
  if (!ok)
    throw error(errc::invalid_input, "chart kind " + kind_name() +
                                         " does not apply to a " +
                                         manifold_.kind_name());
  if (kind_ == ChartKind::Stereographic) {
    double r = manifold_.radius();
    up_ = center_.ambient;
    for (double& x : up_) x /= r;
    sphere_frame(up_, e1_, e2_);
  }
}

Chart Chart::for_patch(const Patch& patch) {
  switch (patch.manifold().kind()) {
    case ManifoldKind::Sphere:
      return Chart(ChartKind::Stereographic, patch.manifold(), patch.center());
    case ManifoldKind::Torus:
      return Chart(ChartKind::PeriodicUnwrap, patch.manifold(), patch.center());
    case ManifoldKind::Euclidean:
      return Chart(ChartKind::Identity, patch.manifold(), patch.center());
  }
  throw error(errc::invalid_input, "unknown manifold kind");
}

std::string Chart::kind_name() const {
  switch (kind_) {
    case ChartKind::Stereographic: return "stereographic";
    case ChartKind::PeriodicUnwrap: return "periodic-unwrap";
    case ChartKind::Identity: return "identity";
  }
  return "unknown";
}

bool Chart::operator==(const Chart& other) const {
  return kind_ == other.kind_ && manifold_ == other.manifold_ &&
         center_.ambient == other.center_.ambient;
}

Vec Chart::forward(const Point& u) const {
  manifold_.require_point(u);
  switch (kind_) {
    case ChartKind::Stereographic: {
      double r = manifold_.radius();
      double x = (u.ambient[0] * e1_[0] + u.ambient[1] * e1_[1] +
                  u.ambient[2] * e1_[2]) / r;
      double y = (u.ambient[0] * e2_[0] + u.ambient[1] * e2_[1] +
                  u.ambient[2] * e2_[2]) / r;
      double z = (u.ambient[0] * up_[0] + u.ambient[1] * up_[1] +
                  u.ambient[2] * up_[2]) / r;
      double denom = 1.0 + z;
      if (denom <= 1e-12)
        throw error(errc::out_of_chart,
                    "point " + point_repr(u) +
                        " is at or beyond the chart's excluded antipode");
      return {r * x / denom, r * y / denom};
    }
    case ChartKind::PeriodicUnwrap: {
      Vec v(manifold_.dim());
      for (int j = 0; j < manifold_.dim(); ++j)
        v[j] = wrap_centered(u.ambient[j] - center_.ambient[j],
                             manifold_.periods()[j]);
      return v;
    }
    case ChartKind::Identity: {
      Vec v(manifold_.dim());
      for (int j = 0; j < manifold_.dim(); ++j)
        v[j] = u.ambient[j] - center_.ambient[j];
      return v;
    }
  }
  throw error(errc::invalid_input, "unknown chart kind");
}

Point Chart::inverse(const Vec& v) const {
  if (static_cast<int>(v.size()) != dim())
    throw error(errc::out_of_chart, "chart coordinate count mismatch");
  for (double x : v)
    if (!std::isfinite(x))
      throw error(errc::out_of_chart, "chart coordinates must be finite");
  Point result;
  switch (kind_) {
    case ChartKind::Stereographic: {
      double r = manifold_.radius();
      double rho2 = (v[0] * v[0] + v[1] * v[1]) / (r * r);
      double denom = 1.0 + rho2;
      double x = 2.0 * (v[0] / r) / denom;
      double y = 2.0 * (v[1] / r) / denom;
      double z = (1.0 - rho2) / denom;
      result.ambient = {r * (x * e1_[0] + y * e2_[0] + z * up_[0]),
                        r * (x * e1_[1] + y * e2_[1] + z * up_[1]),
                        r * (x * e1_[2] + y * e2_[2] + z * up_[2])};
      break;
    }
    case ChartKind::PeriodicUnwrap: {
      result.ambient.resize(manifold_.dim());
      for (int j = 0; j < manifold_.dim(); ++j) {
        double half = manifold_.periods()[j] / 2.0;
        if (std::abs(v[j]) > half)
          throw error(errc::out_of_chart,
                      "unwrapped coordinate exceeds half the period");
        result.ambient[j] = wrap_cell(center_.ambient[j] + v[j],
                                      manifold_.periods()[j]);
      }
      break;
    }
    case ChartKind::Identity: {
      result.ambient.resize(manifold_.dim());
      for (int j = 0; j < manifold_.dim(); ++j)
        result.ambient[j] = center_.ambient[j] + v[j];
      break;
    }
  }
  result.chart = v;
  return result;
}

namespace {

Point cap_point(const Manifold& sphere, const Vec& e1, const Vec& e2,
                const Vec& up, double cos_theta, double psi) {
  double r = sphere.radius();
  double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
  double cx = sin_theta * std::cos(psi);
  double cy = sin_theta * std::sin(psi);
  return Point{{r * (cx * e1[0] + cy * e2[0] + cos_theta * up[0]),
                r * (cx * e1[1] + cy * e2[1] + cos_theta * up[1]),
                r * (cx * e1[2] + cy * e2[2] + cos_theta * up[2])}};
}

std::vector<Point> sample_sphere_cap(const Patch& patch, int n,
                                     SampleStrategy strategy,
                                     std::uint64_t seed) {
  const Manifold& m = patch.manifold();
  double theta_max = patch.geodesic_radius() / m.radius();
  double cos_max = std::cos(theta_max);
  Vec up = patch.center().ambient, e1, e2;
  for (double& x : up) x /= m.radius();
  sphere_frame(up, e1, e2);

  auto rng = detail::seeded_rng(seed);
  std::vector<Point> pts;
  pts.reserve(n);
  if (strategy == SampleStrategy::UniformRandom) {
    for (int i = 0; i < n; ++i) {
      double t = detail::uniform01(rng);
      double psi = 2.0 * std::acos(-1.0) * detail::uniform01(rng);
      // t area-uniform in the cap: cos(theta) linear in t.
      pts.push_back(cap_point(m, e1, e2, up, 1.0 - t * (1.0 - cos_max), psi));
    }
  } else {
    // Fibonacci cap lattice with a seed-dependent azimuthal phase.
    double phase = detail::uniform01(rng);
    for (int i = 0; i < n; ++i) {
      double t = (i + 0.5) / n;
      double frac = i * kGoldenConjugate + phase;
      frac -= std::floor(frac);
      double psi = 2.0 * std::acos(-1.0) * frac;
      pts.push_back(cap_point(m, e1, e2, up, 1.0 - t * (1.0 - cos_max), psi));
    }
  }
  return pts;
}

std::vector<Point> sample_chart_ball(const Patch& patch, int n,
                                     SampleStrategy strategy,
                                     std::uint64_t seed) {
  const int dim = patch.manifold().dim();
  const double r = patch.geodesic_radius();
  Chart chart = Chart::for_patch(patch);
  auto rng = detail::seeded_rng(seed);

  std::vector<double> shift(dim, 0.0);
  if (strategy == SampleStrategy::QuasiUniform)
    for (double& s : shift) s = detail::uniform01(rng);

  std::vector<Point> pts;
  pts.reserve(n);
  Vec v(dim);
  std::uint64_t index = 0;
  while (static_cast<int>(pts.size()) < n) {
    double s2 = 0.0;
    for (int j = 0; j < dim; ++j) {
      double x;
      if (strategy == SampleStrategy::UniformRandom) {
        x = detail::uniform01(rng);
      } else {
        x = detail::radical_inverse(index + 1, detail::nth_prime(j)) + shift[j];
        x -= std::floor(x);
      }
      v[j] = (2.0 * x - 1.0) * r;
      s2 += v[j] * v[j];
    }
    ++index;
    if (s2 >= r * r) continue;  // rejection: keep the open geodesic ball
    pts.push_back(chart.inverse(v));
  }
  return pts;
}

}  // namespace

std::vector<Point> sample_patch(const Patch& patch, int n,
                                SampleStrategy strategy, std::uint64_t seed) {
  if (n < 1) throw error(errc::invalid_input, "sample size must be >= 1");
  if (patch.manifold().kind() == ManifoldKind::Sphere)
    return sample_sphere_cap(patch, n, strategy, seed);
  return sample_chart_ball(patch, n, strategy, seed);
}

double chart_lipschitz(const Chart& chart, std::span<const Point> points) {
  if (points.size() < 2)
    throw error(errc::invalid_input,
                "chart_lipschitz needs at least two points");
  std::vector<Vec> vs;
  vs.reserve(points.size());
  for (const Point& p : points) vs.push_back(chart.forward(p));
  double worst = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      double dg = chart.manifold().geodesic_distance(points[i], points[j]);
      if (dg <= 0.0) continue;
      double dv = 0.0;
      for (std::size_t k = 0; k < vs[i].size(); ++k) {
        double d = vs[i][k] - vs[j][k];
        dv += d * d;
      }
      worst = std::max(worst, std::sqrt(dv) / dg);
    }
  }
  return worst;
}

}  // namespace hbi
