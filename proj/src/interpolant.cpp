#include "hbi/interpolant.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

#include "detail/finite_difference.hpp"
#include "detail/weights.hpp"

namespace hbi {

HermiteNode::HermiteNode(Point point, MultiIndexSet delta_set,
                         std::map<MultiIndex, double> values)
    : point_(std::move(point)),
      deltas_(std::move(delta_set)),
      values_(std::move(values)) {
  if (values_.size() != deltas_.size())
    throw error(errc::inconsistent_data,
                "node derivative data must cover its multi-index set exactly");
  for (const auto& [beta, value] : values_) {
    if (!deltas_.contains(beta))
      throw error(errc::inconsistent_data,
                  "node data key " + beta.str() +
                      " is not in the node's multi-index set");
    if (!std::isfinite(value))
      throw error(errc::inconsistent_data,
                  "node data value for " + beta.str() + " is not finite");
  }
}

HermiteNode HermiteNode::lagrange(Point point, int dim, double value) {
  std::map<MultiIndex, double> values;
  values.emplace(MultiIndex::zero(dim), value);
  return HermiteNode(std::move(point), MultiIndexSet::lagrange(dim),
                     std::move(values));
}

double HermiteNode::value(const MultiIndex& beta) const {
  auto it = values_.find(beta);
  if (it == values_.end())
    throw error(errc::invalid_index,
                "multi-index " + beta.str() + " is not in the node's set");
  return it->second;
}

const char* weight_mode_name(WeightMode mode) {
  return mode == WeightMode::Global ? "global" : "localized";
}

double ConditionReport::max_residual(int order) const {
  if (order < 0 || order > max_order)
    throw error(errc::invalid_input, "no residuals of that order");
  return max_residual_[order];
}

double ConditionReport::value_scale(int order) const {
  if (order < 0 || order > max_order)
    throw error(errc::invalid_input, "no residuals of that order");
  return value_scale_[order];
}

Interpolant Interpolant::build(const Patch& patch, const Chart& chart,
                               std::vector<HermiteNode> nodes,
                               WeightConfig weights, WeightMode mode,
                               Options options) {
  return Interpolant(patch, chart, std::move(nodes), weights, mode, options);
}

Interpolant::Interpolant(Patch patch, Chart chart,
                         std::vector<HermiteNode> nodes, WeightConfig weights,
                         WeightMode mode, Options options)
    : patch_(std::move(patch)),
      chart_(std::move(chart)),
      nodes_(std::move(nodes)),
      weights_(weights),
      mode_(mode),
      options_(options) {
  if (!(chart_.manifold() == patch_.manifold()) ||
      chart_.center().ambient != patch_.center().ambient)
    throw error(errc::invalid_input,
                "chart must be centered on the patch over the same manifold");
  if (nodes_.empty())
    throw error(errc::invalid_input, "interpolant needs at least one node");

  const Manifold& m = manifold();
  std::vector<MultiIndexSet> sets;
  sets.reserve(nodes_.size());
  std::vector<Point> points;
  points.reserve(nodes_.size());
  int min_q = std::numeric_limits<int>::max();
  for (HermiteNode& node : nodes_) {
    if (node.delta_set().dim() != chart_.dim())
      throw error(errc::invalid_input,
                  "node multi-index dimension does not match the chart");
    node = HermiteNode(m.canonical(node.point()), node.delta_set(),
                       node.values());
    sets.push_back(node.delta_set());
    points.push_back(node.point());
    node_q_.push_back(completeness_order(node.delta_set()));
    min_q = std::min(min_q, node_q_.back());
  }
  order_k_ = global_order_k(sets);
  completeness_q_ = min_q;
  weights_.validate(order_k_, mode_ == WeightMode::Localized);
  near_tol_ = weights_.near_node_tol * patch_.diameter();

  // Derivative data live in the patch chart, so Hermite nodes must sit
  // inside the patch; Lagrange-only data never consult the chart and may
  // cover the whole manifold.
  if (order_k_ > 0) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (!patch_.contains(points[i])) {
        std::ostringstream out;
        out << "node " << i << " lies outside the patch (geodesic distance "
            << m.geodesic_distance(points[i], patch_.center())
            << " >= radius " << patch_.geodesic_radius() << ")";
        throw error(errc::invalid_input, out.str());
      }
    }
  }

  index_ = NeighborIndex::build(m, points);  // also rejects duplicate nodes

  taylor_.resize(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    TaylorData& data = taylor_[i];
    if (order_k_ > 0) data.v_center = chart_.forward(nodes_[i].point());
    for (const auto& [beta, value] : nodes_[i].values()) {
      data.betas.push_back(beta);
      data.coeffs.push_back(value / factorial_product(beta));
    }
  }
}

double Interpolant::taylor_term_chart(int node, const Vec& v) const {
  const TaylorData& data = taylor_[node];
  if (data.v_center.empty()) return data.coeffs.front();  // Lagrange node
  Vec dv(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) dv[j] = v[j] - data.v_center[j];
  double sum = 0.0;
  for (std::size_t t = 0; t < data.betas.size(); ++t)
    sum += data.coeffs[t] * monomial(dv, data.betas[t]);
  return sum;
}

int Interpolant::node_completeness(int node) const {
  if (node < 0 || node >= node_count())
    throw error(errc::invalid_input, "node index out of range");
  return node_q_[node];
}

double Interpolant::taylor_term(int node, const Point& u) const {
  if (node < 0 || node >= node_count())
    throw error(errc::invalid_input, "node index out of range");
  if (order_k_ == 0) return taylor_[node].coeffs.front();
  return taylor_term_chart(node, chart_.forward(manifold().canonical(u)));
}

SparseWeights Interpolant::sparse_weights_at(const Point& u) const {
  Point q = manifold().canonical(u);
  if (mode_ == WeightMode::Localized) {
    std::vector<Point> pts;  // cbf_localized indexes the original node order
    pts.reserve(nodes_.size());
    for (const HermiteNode& n : nodes_) pts.push_back(n.point());
    try {
      return cbf_localized(manifold(), q, pts, weights_.mu, weights_.delta,
                           weights_.bump_exponent, index_, near_tol_);
    } catch (const uncovered_point_error&) {
      if (!options_.fallback_global) throw;
    }
  }
  std::vector<Point> pts;
  pts.reserve(nodes_.size());
  for (const HermiteNode& n : nodes_) pts.push_back(n.point());
  SparseWeights out;
  out.value = detail::inverse_weights(manifold(), q, pts, weights_.mu,
                                      near_tol_);
  out.index.resize(out.value.size());
  std::iota(out.index.begin(), out.index.end(), 0);
  return out;
}

std::vector<double> Interpolant::weights_at(const Point& u) const {
  SparseWeights sparse = sparse_weights_at(u);
  std::vector<double> dense(nodes_.size(), 0.0);
  for (std::size_t t = 0; t < sparse.index.size(); ++t)
    dense[sparse.index[t]] = sparse.value[t];
  return dense;
}

double Interpolant::evaluate_with_weights(const Point& u,
                                          const SparseWeights& g) const {
  bool needs_chart = false;
  for (int i : g.index)
    if (!taylor_[i].v_center.empty()) needs_chart = true;
  Vec v;
  if (needs_chart) v = chart_.forward(u);
  double sum = 0.0;
  for (std::size_t t = 0; t < g.index.size(); ++t) {
    int i = g.index[t];
    double taylor = taylor_[i].v_center.empty() ? taylor_[i].coeffs.front()
                                                : taylor_term_chart(i, v);
    sum += taylor * g.value[t];
  }
  return sum;
}

double Interpolant::evaluate(const Point& u) const {
  Point q = manifold().canonical(u);
  // Evaluation at (or within the short-circuit radius of) a node returns
  // the stored value directly, independent of the weight quotient.
  auto [nearest, dist] = index_.nearest(q);
  if (dist <= near_tol_)
    return nodes_[nearest].value(MultiIndex::zero(chart_.dim()));
  return evaluate_with_weights(q, sparse_weights_at(q));
}

std::vector<double> Interpolant::evaluate_batch(
    std::span<const Point> points) const {
  std::vector<double> out(points.size());
  unsigned workers = std::thread::hardware_concurrency();
  if (workers <= 1 || points.size() < 256) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      try {
        out[i] = evaluate(points[i]);
      } catch (const uncovered_point_error& e) {
        throw e.with_index(static_cast<long>(i));
      } catch (const error& e) {
        throw error(e.code(), "batch point " + std::to_string(i) + ": " +
                                  e.what());
      }
    }
    return out;
  }

  workers = std::min<std::size_t>(workers, 8);
  struct Failure {
    std::size_t index;
    std::exception_ptr what;
  };
  std::vector<Failure> failures(workers, {points.size(), nullptr});
  std::vector<std::thread> threads;
  std::size_t chunk = (points.size() + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    threads.emplace_back([&, w]() {
      std::size_t begin = w * chunk;
      std::size_t end = std::min(points.size(), begin + chunk);
      for (std::size_t i = begin; i < end; ++i) {
        try {
          out[i] = evaluate(points[i]);
        } catch (...) {
          failures[w] = {i, std::current_exception()};
          return;
        }
      }
    });
  }
  for (std::thread& t : threads) t.join();
  const Failure* first = nullptr;
  for (const Failure& f : failures)
    if (f.what && (!first || f.index < first->index)) first = &f;
  if (first) {
    try {
      std::rethrow_exception(first->what);
    } catch (const uncovered_point_error& e) {
      throw e.with_index(static_cast<long>(first->index));
    } catch (const error& e) {
      throw error(e.code(), "batch point " + std::to_string(first->index) +
                                ": " + e.what());
    }
  }
  return out;
}

double Interpolant::evaluate_basis(int node, const MultiIndex& beta,
                                   const Point& u) const {
  if (node < 0 || node >= node_count())
    throw error(errc::invalid_input, "node index out of range");
  if (!nodes_[node].delta_set().contains(beta))
    throw error(errc::invalid_index,
                "multi-index " + beta.str() + " is not in node " +
                    std::to_string(node) + "'s set");
  Point q = manifold().canonical(u);
  double g = weights_at(q)[node];
  if (beta.is_zero()) return g;
  Vec v = chart_.forward(q);
  const Vec& vc = taylor_[node].v_center;
  Vec dv(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) dv[j] = v[j] - vc[j];
  return monomial(dv, beta) / factorial_product(beta) * g;
}

double Interpolant::min_node_separation() const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    for (std::size_t j = i + 1; j < nodes_.size(); ++j)
      best = std::min(best, manifold().geodesic_distance(nodes_[i].point(),
                                                         nodes_[j].point()));
  return best;
}

ConditionReport Interpolant::verify_conditions(double fd_step) const {
  if (!(fd_step > 0.0))
    throw error(errc::invalid_input, "fd_step must be positive");
  if (nodes_.size() > 1) {
    double sep = min_node_separation();
    if (fd_step >= sep / 2.0) {
      std::ostringstream out;
      out << "fd_step " << fd_step << " must be below half the minimum node "
          << "separation " << sep;
      throw error(errc::step_too_large, out.str());
    }
  }

  ConditionReport report;
  report.fd_step = fd_step;
  report.max_order = order_k_;
  report.max_residual_.assign(order_k_ + 1, 0.0);
  report.value_scale_.assign(order_k_ + 1, 0.0);

  auto h_of_chart = [&](const Vec& v) { return evaluate(chart_.inverse(v)); };
  for (int i = 0; i < node_count(); ++i) {
    const HermiteNode& node = nodes_[i];
    for (const auto& [beta, value] : node.values()) {
      double approx;
      if (beta.is_zero()) {
        approx = evaluate(node.point());
      } else {
        approx = detail::central_difference(h_of_chart, taylor_[i].v_center,
                                            beta, fd_step);
      }
      double residual = std::abs(approx - value);
      report.entries.push_back({i, beta, residual});
      report.max_residual_[beta.order()] =
          std::max(report.max_residual_[beta.order()], residual);
      report.value_scale_[beta.order()] =
          std::max(report.value_scale_[beta.order()], std::abs(value));
    }
  }
  return report;
}

}  // namespace hbi
