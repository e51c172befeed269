#include "hbi/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace hbi {

double fill_distance(const Manifold& manifold, std::span<const Point> nodes,
                     std::span<const Point> reference) {
  if (nodes.empty() || reference.empty())
    throw error(errc::invalid_input,
                "fill_distance needs nonempty node and reference sets");
  NeighborIndex index = NeighborIndex::build(manifold, nodes);
  double h = 0.0;
  for (const Point& r : reference) h = std::max(h, index.nearest(r).second);
  return h;
}

double separation_distance(const Manifold& manifold,
                           std::span<const Point> nodes) {
  if (nodes.size() < 2)
    throw error(errc::invalid_input,
                "separation_distance needs at least two nodes");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j)
      best = std::min(best, manifold.geodesic_distance(nodes[i], nodes[j]));
  return best / 2.0;
}

std::pair<double, double> error_norms(const TestFunction& f,
                                      const Interpolant& interpolant,
                                      std::span<const Point> grid) {
  std::vector<double> values = interpolant.evaluate_batch(grid);
  const Chart& chart = interpolant.chart();
  double max_err = 0.0, sum_sq = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double err = std::abs(f(chart.forward(grid[i])) - values[i]);
    max_err = std::max(max_err, err);
    sum_sq += err * err;
  }
  double rms = grid.empty() ? 0.0 : std::sqrt(sum_sq / grid.size());
  return {max_err, rms};
}

std::vector<BoundViolation> check_bounds(const TestFunction& f,
                                         const Interpolant& interpolant,
                                         std::span<const Point> points,
                                         double slack) {
  std::vector<BoundViolation> violations;
  const Chart& chart = interpolant.chart();
  for (std::size_t p = 0; p < points.size(); ++p) {
    SparseWeights g = interpolant.sparse_weights_at(points[p]);
    double h_value = interpolant.evaluate(points[p]);
    double f_value = f(chart.forward(points[p]));
    double max_taylor = 0.0, max_local_err = 0.0;
    for (int i : g.index) {
      double taylor = interpolant.taylor_term(i, points[p]);
      max_taylor = std::max(max_taylor, std::abs(taylor));
      max_local_err = std::max(max_local_err, std::abs(f_value - taylor));
    }
    if (std::abs(h_value) > max_taylor + slack)
      violations.push_back(
          {static_cast<int>(p), 'a', std::abs(h_value), max_taylor});
    if (std::abs(f_value - h_value) > max_local_err + slack)
      violations.push_back({static_cast<int>(p), 'b',
                            std::abs(f_value - h_value), max_local_err});
  }
  return violations;
}

OrderFit fit_order(std::span<const ConvergenceRecord> records,
                   std::size_t from) {
  OrderFit fit;
  constexpr double kErrorFloor = 1e-13;
  std::vector<double> xs, ys;
  for (std::size_t i = from; i < records.size(); ++i) {
    if (records[i].max_error <= kErrorFloor) continue;
    xs.push_back(std::log(records[i].fill_distance));
    ys.push_back(std::log(records[i].max_error));
  }
  fit.points_used = static_cast<int>(xs.size());
  if (xs.size() < 2) {
    fit.skipped = true;
    fit.skip_reason = xs.empty()
                          ? "all errors at the rounding floor (exact "
                            "reproduction)"
                          : "fewer than two usable levels";
    return fit;
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= xs.size();
  my /= ys.size();
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) {
    fit.skipped = true;
    fit.skip_reason = "degenerate fit: identical fill distances";
    return fit;
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (syy == 0.0) {
    fit.r_squared = 1.0;
  } else {
    double ss_res = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
      ss_res += r * r;
    }
    fit.r_squared = std::max(0.0, 1.0 - ss_res / syy);
  }
  return fit;
}

StudyResult convergence_study(const TestFunction& f, const Patch& patch,
                              const StudyConfig& config) {
  if (config.levels < 3)
    throw error(errc::invalid_input, "convergence study needs >= 3 levels");
  if (!(config.K >= 1.0))
    throw error(errc::invalid_input, "delta factor K must be >= 1");
  if (config.q < 0 || config.n0 < 1 || config.eval_grid_n < 1 ||
      config.reference_factor < 1)
    throw error(errc::invalid_input, "bad convergence study configuration");
  const Chart chart = Chart::for_patch(patch);
  const int m = patch.manifold().dim();
  if (f.dim() != m)
    throw error(errc::invalid_input,
                "test function dimension does not match the manifold");
  if (config.q > f.max_order())
    throw error(errc::order_exceeded,
                "target order q exceeds the test function's max_order");

  MultiIndexSet deltas = MultiIndexSet::complete(m, config.q);
  WeightConfig weights = WeightConfig::defaults_for_order(config.q);

  std::vector<Point> grid = sample_patch(patch, config.eval_grid_n,
                                         SampleStrategy::QuasiUniform,
                                         config.seed ^ 0x9e3779b97f4a7c15ull);

  StudyResult result;
  // Refining by 2^m per level halves the fill distance.
  long growth = 1L << m;
  long n = config.n0;
  for (int level = 0; level < config.levels; ++level, n *= growth) {
    std::vector<Point> nodes =
        sample_patch(patch, static_cast<int>(n), SampleStrategy::QuasiUniform,
                     config.seed + static_cast<std::uint64_t>(level));
    std::vector<Point> reference = sample_patch(
        patch, static_cast<int>(n * config.reference_factor),
        SampleStrategy::QuasiUniform,
        config.seed + 0x51ed2701ull + static_cast<std::uint64_t>(level));
    double h = fill_distance(patch.manifold(), nodes, reference);

    std::vector<HermiteNode> hermite;
    hermite.reserve(nodes.size());
    for (const Point& z : nodes) {
      Vec v = chart.forward(z);
      std::map<MultiIndex, double> data;
      for (const MultiIndex& beta : deltas)
        data.emplace(beta, f.derivative(v, beta));
      hermite.emplace_back(z, deltas, std::move(data));
    }

    weights.delta = config.K * h;
    Interpolant interpolant =
        Interpolant::build(patch, chart, std::move(hermite), weights,
                           config.mode);
    std::pair<double, double> errs;
    try {
      errs = error_norms(f, interpolant, grid);
    } catch (const uncovered_point_error& e) {
      std::ostringstream out;
      out << "level " << level << " (n = " << n << ", delta = "
          << weights.delta << "): " << e.what()
          << "; increase K";
      throw error(errc::uncovered_point, out.str());
    }
    result.records.push_back({level, static_cast<int>(n), h, errs.first,
                              errs.second});
  }

  std::vector<Point> lipschitz_sample =
      sample_patch(patch, 200, SampleStrategy::QuasiUniform, config.seed);
  result.chart_lipschitz = chart_lipschitz(chart, lipschitz_sample);
  // The coarsest level is preasymptotic; fit the rest.
  result.fit = fit_order(result.records, 1);
  return result;
}

}  // namespace hbi
