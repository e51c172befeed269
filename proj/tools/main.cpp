// Command-line front end: eval, converge, basis-dump, fill-distance.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hbi/analysis.hpp"
#include "hbi/io.hpp"

namespace {

using nlohmann::json;

int exit_code_for(hbi::errc code) {
  switch (code) {
    case hbi::errc::uncovered_point: return 3;
    case hbi::errc::io: return 4;
    default: return 2;  // validation family, including parse
  }
}

hbi::WeightMode parse_mode(const std::string& text) {
  if (text == "global") return hbi::WeightMode::Global;
  if (text == "localized") return hbi::WeightMode::Localized;
  throw hbi::error(hbi::errc::invalid_input,
                   "mode must be 'global' or 'localized'");
}

struct Overrides {
  std::optional<double> mu;
  std::optional<double> delta;
  std::optional<double> near_tol;
  std::optional<std::string> mode;
  bool fallback_global = false;

  void apply(hbi::NodeSet& set, json& echo) const {
    if (mu) set.weights.mu = *mu;
    if (delta) set.weights.delta = *delta;
    if (near_tol) set.weights.near_node_tol = *near_tol;
    if (mode) set.mode = parse_mode(*mode);
    echo["mu"] = set.weights.mu;
    echo["delta"] = set.weights.delta;
    echo["near_node_tol"] = set.weights.near_node_tol;
    echo["bump_exponent"] = set.weights.bump_exponent;
    echo["mode"] = hbi::weight_mode_name(set.mode);
    echo["fallback_global"] = fallback_global;
  }
};

void add_override_flags(CLI::App* cmd, Overrides& overrides) {
  cmd->add_option("--mu", overrides.mu, "Distance-power exponent override");
  cmd->add_option("--delta", overrides.delta,
                  "Localization radius override (localized mode)");
  cmd->add_option("--near-tol", overrides.near_tol,
                  "Near-node short-circuit tolerance override (fraction of "
                  "the patch diameter)");
  cmd->add_option("--mode", overrides.mode,
                  "Weight mode override: global or localized")
      ->check(CLI::IsMember({"global", "localized"}));
  cmd->add_flag("--fallback-global", overrides.fallback_global,
                "Fall back to global weights at uncovered points");
}

std::vector<hbi::Point> load_eval_points(const hbi::NodeSet& set,
                                         const std::string& points_path,
                                         int grid_n, std::uint64_t seed,
                                         json& echo) {
  if (!points_path.empty() && grid_n > 0)
    throw hbi::error(hbi::errc::invalid_input,
                     "give either --points or --grid-n, not both");
  if (!points_path.empty()) {
    echo["points"] = points_path;
    return hbi::read_points(points_path, set.manifold);
  }
  if (grid_n > 0) {
    echo["grid_n"] = grid_n;
    echo["seed"] = seed;
    return hbi::sample_patch(set.patch, grid_n,
                             hbi::SampleStrategy::QuasiUniform, seed);
  }
  throw hbi::error(hbi::errc::invalid_input,
                   "need evaluation points: --points FILE or --grid-n N");
}

std::vector<std::string> point_columns(const hbi::Manifold& manifold) {
  std::vector<std::string> cols;
  for (int j = 1; j <= manifold.ambient_dim(); ++j)
    cols.push_back("u" + std::to_string(j));
  return cols;
}

int cmd_eval(const std::string& nodes_path, const std::string& points_path,
             int grid_n, std::uint64_t seed, const Overrides& overrides,
             const std::string& function, const std::string& out_path) {
  json echo;
  echo["subcommand"] = "eval";
  echo["nodes"] = nodes_path;
  hbi::NodeSet set = hbi::read_nodes(nodes_path);
  overrides.apply(set, echo);
  std::vector<hbi::Point> points =
      load_eval_points(set, points_path, grid_n, seed, echo);

  hbi::Interpolant interpolant = hbi::Interpolant::build(
      set.patch, set.chart, set.nodes, set.weights, set.mode,
      {.fallback_global = overrides.fallback_global});
  std::vector<double> values = interpolant.evaluate_batch(points);

  std::optional<hbi::TestFunction> reference;
  if (!function.empty()) {
    reference = hbi::builtin(function, set.chart.dim());
    echo["function"] = function;
  }

  hbi::ResultTable table;
  table.comments = {"config: " + echo.dump()};
  table.columns = point_columns(set.manifold);
  table.columns.push_back("H");
  if (reference) {
    table.columns.push_back("f");
    table.columns.push_back("error");
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::vector<double> row = points[i].ambient;
    row.push_back(values[i]);
    if (reference) {
      double f_value = (*reference)(set.chart.forward(points[i]));
      row.push_back(f_value);
      row.push_back(values[i] - f_value);
    }
    table.rows.push_back(std::move(row));
  }
  hbi::write_results(out_path, table);
  return 0;
}

int cmd_basis_dump(const std::string& nodes_path,
                   const std::string& points_path, int grid_n,
                   std::uint64_t seed, const Overrides& overrides,
                   const std::string& out_path) {
  json echo;
  echo["subcommand"] = "basis-dump";
  echo["nodes"] = nodes_path;
  hbi::NodeSet set = hbi::read_nodes(nodes_path);
  overrides.apply(set, echo);
  std::vector<hbi::Point> points =
      load_eval_points(set, points_path, grid_n, seed, echo);

  hbi::Interpolant interpolant = hbi::Interpolant::build(
      set.patch, set.chart, set.nodes, set.weights, set.mode,
      {.fallback_global = overrides.fallback_global});

  hbi::ResultTable table;
  table.comments = {"config: " + echo.dump()};
  table.columns = point_columns(set.manifold);
  for (int i = 0; i < interpolant.node_count(); ++i)
    table.columns.push_back("g" + std::to_string(i));
  table.columns.push_back("pu_residual");
  for (const hbi::Point& u : points) {
    std::vector<double> row = u.ambient;
    std::vector<double> g = interpolant.weights_at(u);
    double sum = 0.0;
    for (double x : g) sum += x;
    row.insert(row.end(), g.begin(), g.end());
    row.push_back(std::abs(sum - 1.0));
    table.rows.push_back(std::move(row));
  }
  hbi::write_results(out_path, table);
  return 0;
}

int cmd_fill_distance(const std::string& nodes_path, int grid_n,
                      std::uint64_t seed, const std::string& out_path) {
  json echo;
  echo["subcommand"] = "fill-distance";
  echo["nodes"] = nodes_path;
  hbi::NodeSet set = hbi::read_nodes(nodes_path);
  std::vector<hbi::Point> nodes;
  nodes.reserve(set.nodes.size());
  for (const hbi::HermiteNode& n : set.nodes) nodes.push_back(n.point());
  int reference_n = grid_n > 0 ? grid_n : 100 * static_cast<int>(nodes.size());
  echo["reference_n"] = reference_n;
  echo["seed"] = seed;
  std::vector<hbi::Point> reference = hbi::sample_patch(
      set.patch, reference_n, hbi::SampleStrategy::QuasiUniform, seed);
  double h = hbi::fill_distance(set.manifold, nodes, reference);
  double sep = nodes.size() >= 2
                   ? hbi::separation_distance(set.manifold, nodes)
                   : 0.0;

  hbi::ResultTable table;
  table.comments = {"config: " + echo.dump()};
  table.columns = {"n_nodes", "n_reference", "fill_distance",
                   "separation_distance"};
  table.rows = {{static_cast<double>(nodes.size()),
                 static_cast<double>(reference_n), h, sep}};
  hbi::write_results(out_path, table);
  return 0;
}

struct PatchSpec {
  std::string manifold = "sphere";
  double radius = 1.0;
  std::vector<double> periods = {1.0, 1.0};
  int dim = 2;
  std::vector<double> center;
  double cap_radius = 0.8;

  hbi::Patch build(json& echo) const {
    hbi::Manifold m = [&] {
      if (manifold == "sphere") return hbi::Manifold::sphere(radius);
      if (manifold == "torus") return hbi::Manifold::torus(periods);
      if (manifold == "euclidean") return hbi::Manifold::euclidean(dim);
      throw hbi::error(hbi::errc::invalid_input,
                       "manifold must be sphere, torus, or euclidean");
    }();
    hbi::Vec c = center;
    if (c.empty()) {
      // North pole for the sphere, cell midpoint for the torus, origin
      // otherwise.
      if (m.kind() == hbi::ManifoldKind::Sphere) {
        c = {0.0, 0.0, radius};
      } else if (m.kind() == hbi::ManifoldKind::Torus) {
        for (double p : periods) c.push_back(p / 2.0);
      } else {
        c.assign(dim, 0.0);
      }
    }
    echo["manifold"] = manifold;
    if (m.kind() == hbi::ManifoldKind::Sphere) echo["radius"] = radius;
    if (m.kind() == hbi::ManifoldKind::Torus) echo["periods"] = periods;
    if (m.kind() == hbi::ManifoldKind::Euclidean) echo["dim"] = dim;
    echo["center"] = c;
    echo["cap_radius"] = cap_radius;
    return hbi::Patch(m, hbi::Point(c), cap_radius);
  }
};

int cmd_converge(const std::string& function, const PatchSpec& spec, int q,
                 int levels, double K, std::uint64_t seed, int grid_n,
                 const std::string& mode, const std::string& out_path) {
  json echo;
  echo["subcommand"] = "converge";
  echo["function"] = function;
  echo["q"] = q;
  echo["levels"] = levels;
  echo["K"] = K;
  echo["seed"] = seed;
  echo["mode"] = mode;
  hbi::Patch patch = spec.build(echo);
  hbi::TestFunction f = hbi::builtin(function, patch.manifold().dim());

  hbi::StudyConfig config;
  config.q = q;
  config.levels = levels;
  config.K = K;
  config.seed = seed;
  config.mode = parse_mode(mode);
  if (grid_n > 0) config.eval_grid_n = grid_n;
  echo["eval_grid_n"] = config.eval_grid_n;
  echo["n0"] = config.n0;

  hbi::StudyResult result = hbi::convergence_study(f, patch, config);

  hbi::ResultTable table;
  table.comments = {"config: " + echo.dump()};
  table.columns = {"level", "n", "h", "max_err", "rms_err"};
  for (const hbi::ConvergenceRecord& rec : result.records)
    table.rows.push_back({static_cast<double>(rec.level),
                          static_cast<double>(rec.n_nodes),
                          rec.fill_distance, rec.max_error, rec.rms_error});
  json fit;
  fit["skipped"] = result.fit.skipped;
  if (result.fit.skipped) {
    fit["reason"] = result.fit.skip_reason;
  } else {
    fit["slope"] = result.fit.slope;
    fit["intercept"] = result.fit.intercept;
    fit["r_squared"] = result.fit.r_squared;
    fit["points_used"] = result.fit.points_used;
  }
  fit["chart_lipschitz"] = result.chart_lipschitz;
  table.footers = {"order_fit: " + fit.dump()};
  hbi::write_results(out_path, table);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hermite-Birkhoff interpolation on manifolds"};
  app.require_subcommand(1);

  std::string nodes_path, points_path, out_path = "-", function;
  int grid_n = 0;
  std::uint64_t seed = 0;
  Overrides overrides;

  CLI::App* eval = app.add_subcommand(
      "eval", "Evaluate the interpolant from a node file");
  eval->add_option("--nodes", nodes_path, "Node file (JSON)")->required();
  eval->add_option("--points", points_path, "Evaluation points (CSV)");
  eval->add_option("--grid-n", grid_n, "Generate a quasi-uniform grid");
  eval->add_option("--seed", seed, "Seed for generated grids");
  eval->add_option("--function", function,
                   "Builtin reference function; adds f and error columns");
  eval->add_option("--out", out_path, "Output CSV ('-' for stdout)");
  add_override_flags(eval, overrides);

  CLI::App* dump = app.add_subcommand(
      "basis-dump", "Emit cardinal basis values g_i on a grid");
  dump->add_option("--nodes", nodes_path, "Node file (JSON)")->required();
  dump->add_option("--points", points_path, "Evaluation points (CSV)");
  dump->add_option("--grid-n", grid_n, "Generate a quasi-uniform grid");
  dump->add_option("--seed", seed, "Seed for generated grids");
  dump->add_option("--out", out_path, "Output CSV ('-' for stdout)");
  add_override_flags(dump, overrides);

  CLI::App* fill = app.add_subcommand(
      "fill-distance", "Fill and separation distances of a node set");
  fill->add_option("--nodes", nodes_path, "Node file (JSON)")->required();
  fill->add_option("--grid-n", grid_n,
                   "Reference sample size (default 100x nodes)");
  fill->add_option("--seed", seed, "Seed for the reference sample");
  fill->add_option("--out", out_path, "Output CSV ('-' for stdout)");

  PatchSpec spec;
  int q = 0, levels = 4;
  double K = 2.0;
  std::string mode = "localized";
  CLI::App* converge = app.add_subcommand(
      "converge", "Empirical convergence study with quasi-uniform "
                  "refinements");
  converge->add_option("--function", function, "Builtin test function")
      ->required();
  converge->add_option("--q", q, "Taylor completeness order at every node");
  converge->add_option("--levels", levels, "Number of refinement levels");
  converge->add_option("--K", K, "Localization factor: delta = K * h");
  converge->add_option("--seed", seed, "Sampling seed");
  converge->add_option("--grid-n", grid_n, "Evaluation grid size");
  converge->add_option("--mode", mode, "Weight mode")
      ->check(CLI::IsMember({"global", "localized"}));
  converge->add_option("--manifold", spec.manifold, "sphere|torus|euclidean");
  converge->add_option("--radius", spec.radius, "Sphere radius");
  converge->add_option("--periods", spec.periods, "Torus periods")
      ->delimiter(',');
  converge->add_option("--dim", spec.dim, "Euclidean dimension");
  converge->add_option("--center", spec.center, "Patch center (ambient)")
      ->delimiter(',');
  converge->add_option("--cap-radius", spec.cap_radius,
                       "Patch geodesic radius");
  converge->add_option("--out", out_path, "Output CSV ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(eval))
      return cmd_eval(nodes_path, points_path, grid_n, seed, overrides,
                      function, out_path);
    if (app.got_subcommand(dump))
      return cmd_basis_dump(nodes_path, points_path, grid_n, seed, overrides,
                            out_path);
    if (app.got_subcommand(fill))
      return cmd_fill_distance(nodes_path, grid_n, seed, out_path);
    if (app.got_subcommand(converge))
      return cmd_converge(function, spec, q, levels, K, seed, grid_n, mode,
                          out_path);
  } catch (const hbi::error& e) {
    std::cerr << "error [" << hbi::errc_name(e.code()) << "]: " << e.what()
              << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error [internal]: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
