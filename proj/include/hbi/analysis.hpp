#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hbi/interpolant.hpp"
#include "hbi/testfunctions.hpp"

namespace hbi {

/// One refinement level of a convergence study.
struct ConvergenceRecord {
  int level = 0;
  int n_nodes = 0;
  double fill_distance = 0.0;
  double max_error = 0.0;
  double rms_error = 0.0;
};

/// Least-squares fit of log(max_error) against log(h). The slope estimates
/// the convergence order q+1.
struct OrderFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  int points_used = 0;
  bool skipped = false;
  std::string skip_reason;
};

/// Discrete fill distance: max over reference points of the geodesic
/// distance to the nearest node. A lower bound of the true supremum,
/// converging as the reference sample densifies.
double fill_distance(const Manifold& manifold, std::span<const Point> nodes,
                     std::span<const Point> reference);

/// Half the minimum pairwise geodesic distance.
double separation_distance(const Manifold& manifold,
                           std::span<const Point> nodes);

/// (max, rms) of |f(v(u)) - H(u)| over the grid.
std::pair<double, double> error_norms(const TestFunction& f,
                                      const Interpolant& interpolant,
                                      std::span<const Point> grid);

/// A point where one of the two cardinal-interpolant bounds failed:
/// (a) |H(u)| <= max_i |T_i(u)|, (b) |f(u)-H(u)| <= max_i |f(u)-T_i(u)|.
struct BoundViolation {
  int point = 0;
  char bound = 'a';
  double lhs = 0.0;
  double rhs = 0.0;
};

std::vector<BoundViolation> check_bounds(const TestFunction& f,
                                         const Interpolant& interpolant,
                                         std::span<const Point> points,
                                         double slack = 1e-12);

struct StudyConfig {
  int q = 0;               // Taylor completeness order at every node
  int levels = 4;          // >= 3
  std::uint64_t seed = 0;
  double K = 2.0;          // delta = K * fill distance, K >= 1
  int n0 = 50;             // nodes at level 0; level j uses n0 * (2^m)^j
  int eval_grid_n = 2000;
  int reference_factor = 100;  // reference sample size = factor * n
  WeightMode mode = WeightMode::Localized;
};

struct StudyResult {
  std::vector<ConvergenceRecord> records;
  OrderFit fit;
  double chart_lipschitz = 0.0;  // measured L for the patch
};

/// Builds quasi-uniform node sets of size n0 * (2^m)^j, attaches complete
/// order-q Hermite data taken from f, sets delta = K*h, and records fill
/// distance and error norms per level. The order fit drops the coarsest
/// level (preasymptotic) and is skipped when the errors sit at the rounding
/// floor.
StudyResult convergence_study(const TestFunction& f, const Patch& patch,
                              const StudyConfig& config);

/// Fits log(max_error) = slope * log(h) + intercept over records[from..].
OrderFit fit_order(std::span<const ConvergenceRecord> records,
                   std::size_t from = 1);

}  // namespace hbi
