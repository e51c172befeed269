// Python bindings: plain lists for points and chart vectors, tuples for
// multi-indices, strings for enums.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "hbi/analysis.hpp"
#include "hbi/io.hpp"

namespace py = pybind11;
using namespace hbi;

namespace {

MultiIndex to_index(const std::vector<int>& components) {
  return MultiIndex(components);
}

std::vector<int> from_index(const MultiIndex& beta) {
  return beta.components();
}

std::vector<Point> to_points(const std::vector<Vec>& raw) {
  std::vector<Point> points;
  points.reserve(raw.size());
  for (const Vec& x : raw) points.emplace_back(x);
  return points;
}

SampleStrategy to_strategy(const std::string& name) {
  if (name == "uniform-random") return SampleStrategy::UniformRandom;
  if (name == "quasi-uniform") return SampleStrategy::QuasiUniform;
  throw error(errc::invalid_input,
              "strategy must be 'uniform-random' or 'quasi-uniform'");
}

WeightMode to_mode(const std::string& name) {
  if (name == "global") return WeightMode::Global;
  if (name == "localized") return WeightMode::Localized;
  throw error(errc::invalid_input, "mode must be 'global' or 'localized'");
}

std::map<MultiIndex, double> to_data(
    const std::map<std::vector<int>, double>& raw) {
  std::map<MultiIndex, double> data;
  for (const auto& [key, value] : raw) data.emplace(to_index(key), value);
  return data;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Hermite-Birkhoff interpolation on the sphere, flat torus, and "
            "Euclidean patches via geodesic cardinal basis functions";

  static py::exception<error> base_error(m, "Error", PyExc_RuntimeError);
  static py::exception<uncovered_point_error> uncovered_error(
      m, "UncoveredPointError", base_error);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const uncovered_point_error& e) {
      PyErr_SetString(uncovered_error.ptr(), e.what());
    } catch (const error& e) {
      std::string text = std::string("[") + errc_name(e.code()) + "] " +
                         e.what();
      PyErr_SetString(base_error.ptr(), text.c_str());
    }
  });

  py::class_<Manifold>(m, "Manifold")
      .def_static("sphere", &Manifold::sphere, py::arg("radius") = 1.0)
      .def_static("torus", [](const Vec& periods) {
        return Manifold::torus(periods);
      })
      .def_static("euclidean", &Manifold::euclidean, py::arg("dim"))
      .def_property_readonly("kind",
                             [](const Manifold& self) { return self.kind_name(); })
      .def_property_readonly("dim", &Manifold::dim)
      .def_property_readonly("ambient_dim", &Manifold::ambient_dim)
      .def("geodesic_distance",
           [](const Manifold& self, const Vec& u, const Vec& w) {
             return self.geodesic_distance(Point(u), Point(w));
           })
      .def("contains",
           [](const Manifold& self, const Vec& u) {
             return self.contains(Point(u));
           })
      .def("__eq__", [](const Manifold& a, const Manifold& b) { return a == b; });

  py::class_<Patch>(m, "Patch")
      .def(py::init([](const Manifold& manifold, const Vec& center,
                       double geodesic_radius) {
             return Patch(manifold, Point(center), geodesic_radius);
           }),
           py::arg("manifold"), py::arg("center"), py::arg("geodesic_radius"))
      .def_property_readonly("manifold", &Patch::manifold)
      .def_property_readonly("center",
                             [](const Patch& self) {
                               return self.center().ambient;
                             })
      .def_property_readonly("geodesic_radius", &Patch::geodesic_radius)
      .def_property_readonly("diameter", &Patch::diameter)
      .def("contains", [](const Patch& self, const Vec& u) {
        return self.contains(Point(u));
      });

  py::class_<Chart>(m, "Chart")
      .def_static("for_patch", &Chart::for_patch, py::arg("patch"))
      .def_property_readonly("kind",
                             [](const Chart& self) { return self.kind_name(); })
      .def_property_readonly("dim", &Chart::dim)
      .def_property_readonly("center",
                             [](const Chart& self) {
                               return self.center().ambient;
                             })
      .def("forward",
           [](const Chart& self, const Vec& u) { return self.forward(Point(u)); })
      .def("inverse", [](const Chart& self, const Vec& v) {
        return self.inverse(v).ambient;
      });

  m.def("sample_patch",
        [](const Patch& patch, int n, const std::string& strategy,
           std::uint64_t seed) {
          std::vector<Vec> out;
          for (Point& p : sample_patch(patch, n, to_strategy(strategy), seed))
            out.push_back(std::move(p.ambient));
          return out;
        },
        py::arg("patch"), py::arg("n"), py::arg("strategy") = "quasi-uniform",
        py::arg("seed") = 0);

  m.def("chart_lipschitz",
        [](const Chart& chart, const std::vector<Vec>& points) {
          return chart_lipschitz(chart, to_points(points));
        });

  py::class_<MultiIndexSet>(m, "MultiIndexSet")
      .def(py::init([](const std::vector<std::vector<int>>& indices) {
        std::vector<MultiIndex> betas;
        betas.reserve(indices.size());
        for (const auto& b : indices) betas.push_back(to_index(b));
        return MultiIndexSet(std::move(betas));
      }))
      .def_static("lagrange", &MultiIndexSet::lagrange, py::arg("dim"))
      .def_static("complete", &MultiIndexSet::complete, py::arg("dim"),
                  py::arg("order"))
      .def_property_readonly("dim", &MultiIndexSet::dim)
      .def("__len__", &MultiIndexSet::size)
      .def("contains",
           [](const MultiIndexSet& self, const std::vector<int>& beta) {
             return self.contains(to_index(beta));
           })
      .def("indices", [](const MultiIndexSet& self) {
        std::vector<std::vector<int>> out;
        for (const MultiIndex& beta : self) out.push_back(from_index(beta));
        return out;
      });

  m.def("global_order_k",
        [](const std::vector<MultiIndexSet>& sets) {
          return global_order_k(sets);
        });
  m.def("completeness_order", &completeness_order);
  m.def("taylor_eval",
        [](const Vec& v, const Vec& v_center, const MultiIndexSet& deltas,
           const std::map<std::vector<int>, double>& data) {
          return taylor_eval(v, v_center, deltas, to_data(data));
        },
        py::arg("v"), py::arg("v_center"), py::arg("deltas"), py::arg("data"));

  m.def("alpha_power", &alpha_power, py::arg("d"), py::arg("mu"));
  m.def("bump", &bump, py::arg("r"), py::arg("delta"), py::arg("s"));
  m.def("cbf_product",
        [](const Manifold& manifold, const Vec& u, const std::vector<Vec>& nodes,
           double mu) {
          return cbf_product(manifold, Point(u), to_points(nodes), mu);
        },
        py::arg("manifold"), py::arg("u"), py::arg("nodes"), py::arg("mu"));
  m.def("cbf_inverse",
        [](const Manifold& manifold, const Vec& u, const std::vector<Vec>& nodes,
           double mu, double near_tol) {
          return cbf_inverse(manifold, Point(u), to_points(nodes), mu, near_tol);
        },
        py::arg("manifold"), py::arg("u"), py::arg("nodes"), py::arg("mu"),
        py::arg("near_tol") = 0.0);

  py::class_<NeighborIndex>(m, "NeighborIndex")
      .def_static("build",
                  [](const Manifold& manifold, const std::vector<Vec>& nodes) {
                    return NeighborIndex::build(manifold, to_points(nodes));
                  })
      .def("__len__", &NeighborIndex::size)
      .def("range_query",
           [](const NeighborIndex& self, const Vec& u, double radius) {
             return self.range_query(Point(u), radius);
           })
      .def("nearest", [](const NeighborIndex& self, const Vec& u) {
        return self.nearest(Point(u));
      });

  py::class_<WeightConfig>(m, "WeightConfig")
      .def(py::init([](double mu, double delta, int bump_exponent,
                       double near_node_tol) {
             WeightConfig config;
             config.mu = mu;
             config.delta = delta;
             config.bump_exponent = bump_exponent;
             config.near_node_tol = near_node_tol;
             return config;
           }),
           py::arg("mu"), py::arg("delta") = 0.0, py::arg("bump_exponent") = 1,
           py::arg("near_node_tol") = 1e-12)
      .def_static("defaults_for_order", &WeightConfig::defaults_for_order,
                  py::arg("k"))
      .def_readwrite("mu", &WeightConfig::mu)
      .def_readwrite("delta", &WeightConfig::delta)
      .def_readwrite("bump_exponent", &WeightConfig::bump_exponent)
      .def_readwrite("near_node_tol", &WeightConfig::near_node_tol);

  py::class_<HermiteNode>(m, "HermiteNode")
      .def(py::init([](const Vec& point,
                       const std::map<std::vector<int>, double>& data) {
             std::vector<MultiIndex> betas;
             for (const auto& [key, value] : data)
               betas.push_back(to_index(key));
             return HermiteNode(Point(point), MultiIndexSet(std::move(betas)),
                                to_data(data));
           }),
           py::arg("point"), py::arg("data"))
      .def_property_readonly("point",
                             [](const HermiteNode& self) {
                               return self.point().ambient;
                             })
      .def_property_readonly("delta_set", &HermiteNode::delta_set)
      .def_property_readonly("data", [](const HermiteNode& self) {
        py::dict out;
        for (const auto& [beta, value] : self.values())
          out[py::tuple(py::cast(from_index(beta)))] = value;
        return out;
      });

  py::class_<TestFunction>(m, "TestFunction")
      .def_property_readonly("name", &TestFunction::name)
      .def_property_readonly("dim", &TestFunction::dim)
      .def_property_readonly("max_order", &TestFunction::max_order)
      .def("__call__",
           [](const TestFunction& self, const Vec& v) { return self(v); })
      .def("derivative",
           [](const TestFunction& self, const Vec& v,
              const std::vector<int>& beta) {
             return self.derivative(v, to_index(beta));
           });
  m.def("builtin", &builtin, py::arg("name"), py::arg("dim"));
  m.def("builtin_names", &builtin_names);
  m.def("derivative_check",
        [](const TestFunction& f, const Vec& v, const std::vector<int>& beta,
           double fd_step) {
          return derivative_check(f, v, to_index(beta), fd_step);
        },
        py::arg("f"), py::arg("v"), py::arg("beta"), py::arg("fd_step"));

  py::class_<ConditionReport>(m, "ConditionReport")
      .def_property_readonly("fd_step",
                             [](const ConditionReport& self) {
                               return self.fd_step;
                             })
      .def_property_readonly("max_order",
                             [](const ConditionReport& self) {
                               return self.max_order;
                             })
      .def("max_residual", &ConditionReport::max_residual, py::arg("order"))
      .def("value_scale", &ConditionReport::value_scale, py::arg("order"))
      .def("entries", [](const ConditionReport& self) {
        std::vector<std::tuple<int, std::vector<int>, double>> out;
        for (const auto& entry : self.entries)
          out.emplace_back(entry.node, from_index(entry.beta), entry.residual);
        return out;
      });

  py::class_<Interpolant>(m, "Interpolant")
      .def_static(
          "build",
          [](const Patch& patch, const Chart& chart,
             const std::vector<HermiteNode>& nodes, const WeightConfig& weights,
             const std::string& mode, bool fallback_global) {
            return Interpolant::build(patch, chart, nodes, weights,
                                      to_mode(mode), {fallback_global});
          },
          py::arg("patch"), py::arg("chart"), py::arg("nodes"),
          py::arg("weights"), py::arg("mode") = "global",
          py::arg("fallback_global") = false)
      .def("evaluate",
           [](const Interpolant& self, const Vec& u) {
             return self.evaluate(Point(u));
           })
      .def("evaluate_batch",
           [](const Interpolant& self, const std::vector<Vec>& points) {
             return self.evaluate_batch(to_points(points));
           },
           py::call_guard<py::gil_scoped_release>())
      .def("evaluate_basis",
           [](const Interpolant& self, int node, const std::vector<int>& beta,
              const Vec& u) {
             return self.evaluate_basis(node, to_index(beta), Point(u));
           })
      .def("taylor_term",
           [](const Interpolant& self, int node, const Vec& u) {
             return self.taylor_term(node, Point(u));
           })
      .def("weights_at",
           [](const Interpolant& self, const Vec& u) {
             return self.weights_at(Point(u));
           })
      .def("verify_conditions", &Interpolant::verify_conditions,
           py::arg("fd_step"))
      .def_property_readonly("node_count", &Interpolant::node_count)
      .def_property_readonly("order_k", &Interpolant::order_k)
      .def_property_readonly("completeness_q", &Interpolant::completeness_q)
      .def_property_readonly("mode",
                             [](const Interpolant& self) {
                               return std::string(weight_mode_name(self.mode()));
                             })
      .def_property_readonly("patch", &Interpolant::patch)
      .def_property_readonly("chart", &Interpolant::chart)
      .def_property_readonly("weights", &Interpolant::weights)
      .def_property_readonly("near_tol", &Interpolant::near_tol);

  m.def("fill_distance",
        [](const Manifold& manifold, const std::vector<Vec>& nodes,
           const std::vector<Vec>& reference) {
          return fill_distance(manifold, to_points(nodes),
                               to_points(reference));
        },
        py::arg("manifold"), py::arg("nodes"), py::arg("reference"));
  m.def("separation_distance",
        [](const Manifold& manifold, const std::vector<Vec>& nodes) {
          return separation_distance(manifold, to_points(nodes));
        });
  m.def("error_norms",
        [](const TestFunction& f, const Interpolant& interpolant,
           const std::vector<Vec>& grid) {
          return error_norms(f, interpolant, to_points(grid));
        });
  m.def("check_bounds",
        [](const TestFunction& f, const Interpolant& interpolant,
           const std::vector<Vec>& points, double slack) {
          std::vector<std::tuple<int, std::string, double, double>> out;
          for (const BoundViolation& v :
               check_bounds(f, interpolant, to_points(points), slack))
            out.emplace_back(v.point, std::string(1, v.bound), v.lhs, v.rhs);
          return out;
        },
        py::arg("f"), py::arg("interpolant"), py::arg("points"),
        py::arg("slack") = 1e-12);

  m.def("convergence_study",
        [](const TestFunction& f, const Patch& patch, int q, int levels,
           std::uint64_t seed, double K, int n0, int eval_grid_n,
           int reference_factor, const std::string& mode) {
          StudyConfig config;
          config.q = q;
          config.levels = levels;
          config.seed = seed;
          config.K = K;
          config.n0 = n0;
          config.eval_grid_n = eval_grid_n;
          config.reference_factor = reference_factor;
          config.mode = to_mode(mode);
          StudyResult result = convergence_study(f, patch, config);
          py::dict out;
          py::list records;
          for (const ConvergenceRecord& rec : result.records) {
            py::dict row;
            row["level"] = rec.level;
            row["n"] = rec.n_nodes;
            row["h"] = rec.fill_distance;
            row["max_error"] = rec.max_error;
            row["rms_error"] = rec.rms_error;
            records.append(row);
          }
          out["records"] = records;
          py::dict fit;
          fit["skipped"] = result.fit.skipped;
          if (result.fit.skipped) {
            fit["reason"] = result.fit.skip_reason;
          } else {
            fit["slope"] = result.fit.slope;
            fit["intercept"] = result.fit.intercept;
            fit["r_squared"] = result.fit.r_squared;
            fit["points_used"] = result.fit.points_used;
          }
          out["fit"] = fit;
          out["chart_lipschitz"] = result.chart_lipschitz;
          return out;
        },
        py::arg("f"), py::arg("patch"), py::arg("q") = 0,
        py::arg("levels") = 4, py::arg("seed") = 0, py::arg("K") = 2.0,
        py::arg("n0") = 50, py::arg("eval_grid_n") = 2000,
        py::arg("reference_factor") = 100, py::arg("mode") = "localized");

  py::class_<NodeSet>(m, "NodeSet")
      .def(py::init([](const Manifold& manifold, const Patch& patch,
                       const Chart& chart, const WeightConfig& weights,
                       const std::string& mode,
                       const std::vector<HermiteNode>& nodes) {
             return NodeSet{manifold, patch, chart, weights, to_mode(mode),
                            nodes};
           }),
           py::arg("manifold"), py::arg("patch"), py::arg("chart"),
           py::arg("weights"), py::arg("mode"), py::arg("nodes"))
      .def_readonly("manifold", &NodeSet::manifold)
      .def_readonly("patch", &NodeSet::patch)
      .def_readonly("chart", &NodeSet::chart)
      .def_readonly("weights", &NodeSet::weights)
      .def_property_readonly("mode",
                             [](const NodeSet& self) {
                               return std::string(weight_mode_name(self.mode));
                             })
      .def_readonly("nodes", &NodeSet::nodes)
      .def("build_interpolant", [](const NodeSet& self, bool fallback_global) {
        return Interpolant::build(self.patch, self.chart, self.nodes,
                                  self.weights, self.mode, {fallback_global});
      }, py::arg("fallback_global") = false);

  m.def("read_nodes", &read_nodes, py::arg("path"));
  m.def("write_nodes", &write_nodes, py::arg("path"), py::arg("set"));

  m.attr("__version__") = "0.1.0";
}
