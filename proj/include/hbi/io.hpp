#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "hbi/interpolant.hpp"

namespace hbi {

/// Parsed node file: manifold/chart/weight header plus the Hermite nodes.
/// All domain invariants are enforced at load time.
struct NodeSet {
  Manifold manifold;
  Patch patch;
  Chart chart;
  WeightConfig weights;
  WeightMode mode = WeightMode::Global;
  std::vector<HermiteNode> nodes;
};

/// Reads the JSON node format (format_version 1). Errors name the offending
/// field, e.g. "nodes[3].position".
NodeSet read_nodes(const std::filesystem::path& path);

void write_nodes(const std::filesystem::path& path, const NodeSet& set);

/// CSV container: '#' comment lines, one header line, numeric rows printed
/// with 17 significant digits (round-trip exact for doubles).
struct ResultTable {
  std::vector<std::string> comments;  // without the leading "# "
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  /// Free-form footer lines appended after the rows (emitted as comments).
  std::vector<std::string> footers;
};

/// `path` may be "-" for stdout.
void write_results(const std::filesystem::path& path, const ResultTable& table);

ResultTable read_results(const std::filesystem::path& path);

/// Plain CSV of embedding coordinates, one point per row; '#' comments
/// allowed. Points are validated against the manifold.
std::vector<Point> read_points(const std::filesystem::path& path,
                               const Manifold& manifold);

/// 17-significant-digit formatting used for all numeric output.
std::string format_double(double x);

}  // namespace hbi
