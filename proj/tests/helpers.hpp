#pragma once

#include <unistd.h>

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "hbi/geometry.hpp"
#include "hbi/interpolant.hpp"
#include "hbi/testfunctions.hpp"

namespace hbitest {

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline hbi::Patch unit_cap(double radius = 0.8) {
  return hbi::Patch(hbi::Manifold::sphere(1.0), hbi::Point{0.0, 0.0, 1.0},
                    radius);
}

// Exact Hermite data for f on the given nodes, complete to order q.
inline std::vector<hbi::HermiteNode> hermite_data(
    const hbi::TestFunction& f, const hbi::Chart& chart,
    const std::vector<hbi::Point>& points, int q) {
  hbi::MultiIndexSet deltas = hbi::MultiIndexSet::complete(chart.dim(), q);
  std::vector<hbi::HermiteNode> nodes;
  nodes.reserve(points.size());
  for (const hbi::Point& z : points) {
    hbi::Vec v = chart.forward(z);
    std::map<hbi::MultiIndex, double> data;
    for (const hbi::MultiIndex& beta : deltas)
      data.emplace(beta, f.derivative(v, beta));
    nodes.emplace_back(z, deltas, std::move(data));
  }
  return nodes;
}

// Scratch directory removed on destruction.
struct TempDir {
  std::filesystem::path path;

  explicit TempDir(const std::string& tag) {
    path = std::filesystem::temp_directory_path() /
           ("hbi-" + tag + "-" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }

  std::filesystem::path file(const std::string& name) const {
    return path / name;
  }
};

}  // namespace hbitest
