#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>
#include <vector>

namespace hbi::detail {

// kd-tree over low-dimensional points with optional per-axis periodic wrap
// (flat torus). Distances are Euclidean with per-axis wrapped differences.
// Sphere callers index ambient coordinates and query by chord radius.
class KdTree {
 public:
  KdTree(std::vector<std::vector<double>> points, std::vector<double> periods)
      : pts_(std::move(points)), periods_(std::move(periods)) {
    order_.resize(pts_.size());
    std::iota(order_.begin(), order_.end(), 0);
    if (!pts_.empty()) root_ = build(0, static_cast<int>(pts_.size()));
  }

  std::size_t size() const { return pts_.size(); }

  // Indices of points with distance(q, p) < radius, ascending.
  std::vector<int> range_query(const std::vector<double>& q,
                               double radius) const {
    std::vector<int> out;
    if (root_ >= 0 && radius > 0.0)
      range_search(root_, q, radius * radius, out);
    std::sort(out.begin(), out.end());
    return out;
  }

  // (index, distance) of the nearest point; (-1, inf) when empty.
  std::pair<int, double> nearest(const std::vector<double>& q) const {
    int best = -1;
    double best_d2 = std::numeric_limits<double>::infinity();
    if (root_ >= 0) nearest_search(root_, q, best, best_d2);
    return {best, std::sqrt(best_d2)};
  }

 private:
  struct Node {
    int left = -1, right = -1;
    int begin = 0, end = 0;  // leaf range into order_
    std::vector<double> lo, hi;
  };

  static constexpr int kLeafSize = 8;

  int dim() const { return static_cast<int>(pts_.front().size()); }

  double axis_diff(double a, double b, int axis) const {
    double d = a - b;
    if (!periods_.empty()) d = std::remainder(d, periods_[axis]);
    return d;
  }

  double dist2(const std::vector<double>& a, const std::vector<double>& b) const {
    double s = 0.0;
    for (int j = 0; j < dim(); ++j) {
      double d = axis_diff(a[j], b[j], j);
      s += d * d;
    }
    return s;
  }

  double axis_box_dist(double q, double lo, double hi, int axis) const {
    auto plain = [&](double x) {
      if (x < lo) return lo - x;
      if (x > hi) return x - hi;
      return 0.0;
    };
    if (periods_.empty()) return plain(q);
    double p = periods_[axis];
    return std::min({plain(q), plain(q + p), plain(q - p)});
  }

  double box_dist2(const Node& node, const std::vector<double>& q) const {
    double s = 0.0;
    for (int j = 0; j < dim(); ++j) {
      double d = axis_box_dist(q[j], node.lo[j], node.hi[j], j);
      s += d * d;
    }
    return s;
  }

  int build(int begin, int end) {
    Node node;
    node.begin = begin;
    node.end = end;
    node.lo.assign(dim(), std::numeric_limits<double>::infinity());
    node.hi.assign(dim(), -std::numeric_limits<double>::infinity());
    for (int i = begin; i < end; ++i) {
      const auto& p = pts_[order_[i]];
      for (int j = 0; j < dim(); ++j) {
        node.lo[j] = std::min(node.lo[j], p[j]);
        node.hi[j] = std::max(node.hi[j], p[j]);
      }
    }
    int self = static_cast<int>(nodes_.size());
    nodes_.push_back(node);
    if (end - begin > kLeafSize) {
      int axis = 0;
      for (int j = 1; j < dim(); ++j)
        if (node.hi[j] - node.lo[j] > node.hi[axis] - node.lo[axis]) axis = j;
      int mid = begin + (end - begin) / 2;
      std::nth_element(order_.begin() + begin, order_.begin() + mid,
                       order_.begin() + end, [&](int a, int b) {
                         return pts_[a][axis] < pts_[b][axis];
                       });
      int left = build(begin, mid);
      int right = build(mid, end);
      nodes_[self].left = left;
      nodes_[self].right = right;
    }
    return self;
  }

  void range_search(int idx, const std::vector<double>& q, double radius2,
                    std::vector<int>& out) const {
    const Node& node = nodes_[idx];
    if (box_dist2(node, q) >= radius2) return;
    if (node.left < 0) {
      for (int i = node.begin; i < node.end; ++i)
        if (dist2(q, pts_[order_[i]]) < radius2) out.push_back(order_[i]);
      return;
    }
    range_search(node.left, q, radius2, out);
    range_search(node.right, q, radius2, out);
  }

  void nearest_search(int idx, const std::vector<double>& q, int& best,
                      double& best_d2) const {
    const Node& node = nodes_[idx];
    if (box_dist2(node, q) >= best_d2) return;
    if (node.left < 0) {
      for (int i = node.begin; i < node.end; ++i) {
        double d2 = dist2(q, pts_[order_[i]]);
        if (d2 < best_d2) {
          best_d2 = d2;
          best = order_[i];
        }
      }
      return;
    }
    double dl = box_dist2(nodes_[node.left], q);
    double dr = box_dist2(nodes_[node.right], q);
    if (dl <= dr) {
      nearest_search(node.left, q, best, best_d2);
      nearest_search(node.right, q, best, best_d2);
    } else {
      nearest_search(node.right, q, best, best_d2);
      nearest_search(node.left, q, best, best_d2);
    }
  }

  std::vector<std::vector<double>> pts_;
  std::vector<double> periods_;
  std::vector<int> order_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

}  // namespace hbi::detail
