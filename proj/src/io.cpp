#include "hbi/io.hpp"

#include <algorithm>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

namespace hbi {

using nlohmann::json;

std::string format_double(double x) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", x);
  return buffer;
}

namespace {

const json& require_field(const json& j, const char* name,
                          const std::string& context) {
  auto it = j.find(name);
  if (it == j.end())
    throw error(errc::parse, context + ": missing field '" + name + "'");
  return *it;
}

double require_number(const json& j, const char* name,
                      const std::string& context) {
  const json& field = require_field(j, name, context);
  if (!field.is_number())
    throw error(errc::parse,
                context + "." + name + ": expected a number");
  return field.get<double>();
}

int require_int(const json& j, const char* name, const std::string& context) {
  const json& field = require_field(j, name, context);
  if (!field.is_number_integer())
    throw error(errc::parse, context + "." + name + ": expected an integer");
  return field.get<int>();
}

std::string require_string(const json& j, const char* name,
                           const std::string& context) {
  const json& field = require_field(j, name, context);
  if (!field.is_string())
    throw error(errc::parse, context + "." + name + ": expected a string");
  return field.get<std::string>();
}

Vec require_vector(const json& j, const char* name,
                   const std::string& context) {
  const json& field = require_field(j, name, context);
  if (!field.is_array() || field.empty())
    throw error(errc::parse,
                context + "." + name + ": expected a nonempty array");
  Vec out;
  out.reserve(field.size());
  for (const json& x : field) {
    if (!x.is_number())
      throw error(errc::parse,
                  context + "." + name + ": expected numeric entries");
    out.push_back(x.get<double>());
  }
  return out;
}

Manifold parse_manifold(const json& j) {
  const std::string context = "manifold";
  std::string kind = require_string(j, "kind", context);
  try {
    if (kind == "sphere")
      return Manifold::sphere(require_number(j, "radius", context));
    if (kind == "torus")
      return Manifold::torus(require_vector(j, "periods", context));
    if (kind == "euclidean")
      return Manifold::euclidean(require_int(j, "dim", context));
  } catch (const error& e) {
    if (e.code() == errc::parse) throw;
    throw error(errc::parse, context + ": " + e.what());
  }
  throw error(errc::parse, context + ".kind: unknown kind '" + kind +
                               "' (sphere, torus, euclidean)");
}

ChartKind parse_chart_kind(const std::string& kind) {
  if (kind == "stereographic") return ChartKind::Stereographic;
  if (kind == "periodic-unwrap") return ChartKind::PeriodicUnwrap;
  if (kind == "identity") return ChartKind::Identity;
  throw error(errc::parse, "chart.kind: unknown kind '" + kind +
                               "' (stereographic, periodic-unwrap, identity)");
}

WeightMode parse_mode(const std::string& mode) {
  if (mode == "global") return WeightMode::Global;
  if (mode == "localized") return WeightMode::Localized;
  throw error(errc::parse,
              "weights.mode: unknown mode '" + mode + "' (global, localized)");
}

}  // namespace

NodeSet read_nodes(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw error(errc::io, "cannot open node file '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in, nullptr, /*allow_exceptions=*/true,
                    /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw error(errc::parse, path.string() + ": " + e.what());
  }

  int version = require_int(j, "format_version", "header");
  if (version != 1)
    throw error(errc::parse, "header.format_version: unsupported version " +
                                 std::to_string(version));

  Manifold manifold = parse_manifold(require_field(j, "manifold", "header"));

  const json& patch_json = require_field(j, "patch", "header");
  Point center(require_vector(patch_json, "center", "patch"));
  double patch_radius = require_number(patch_json, "geodesic_radius", "patch");
  Patch patch = [&] {
    try {
      return Patch(manifold, center, patch_radius);
    } catch (const error& e) {
      throw error(e.code(), "patch: " + std::string(e.what()));
    }
  }();

  const json& chart_json = require_field(j, "chart", "header");
  ChartKind chart_kind =
      parse_chart_kind(require_string(chart_json, "kind", "chart"));
  Chart chart = [&] {
    try {
      return Chart(chart_kind, manifold, patch.center());
    } catch (const error& e) {
      throw error(e.code(), "chart: " + std::string(e.what()));
    }
  }();

  const json& weights_json = require_field(j, "weights", "header");
  WeightConfig weights;
  weights.mu = require_number(weights_json, "mu", "weights");
  weights.delta = weights_json.value("delta", 0.0);
  weights.bump_exponent = weights_json.value("bump_exponent", 1);
  weights.near_node_tol = weights_json.value("near_node_tol", 1e-12);
  WeightMode mode = parse_mode(require_string(weights_json, "mode", "weights"));

  const json& nodes_json = require_field(j, "nodes", "file");
  if (!nodes_json.is_array() || nodes_json.empty())
    throw error(errc::parse, "nodes: expected a nonempty array");

  std::vector<HermiteNode> nodes;
  nodes.reserve(nodes_json.size());
  const int m = chart.dim();
  for (std::size_t i = 0; i < nodes_json.size(); ++i) {
    std::string context = "nodes[" + std::to_string(i) + "]";
    const json& node_json = nodes_json[i];
    Vec position = require_vector(node_json, "position", context);
    const json& data_json = require_field(node_json, "data", context);
    if (!data_json.is_object() || data_json.empty())
      throw error(errc::parse,
                  context + ".data: expected a nonempty object keyed by "
                            "multi-index strings");
    std::map<MultiIndex, double> values;
    std::vector<MultiIndex> betas;
    for (const auto& [key, value] : data_json.items()) {
      MultiIndex beta = [&] {
        try {
          return MultiIndex::parse(key, m);
        } catch (const error& e) {
          throw error(errc::parse,
                      context + ".data key '" + key + "': " + e.what());
        }
      }();
      if (!value.is_number())
        throw error(errc::parse,
                    context + ".data['" + key + "']: expected a number");
      values.emplace(beta, value.get<double>());
      betas.push_back(std::move(beta));
    }
    try {
      Point point(position);
      manifold.require_point(point);
      nodes.emplace_back(manifold.canonical(point), MultiIndexSet(betas),
                         values);
    } catch (const error& e) {
      throw error(e.code(), context + ": " + e.what());
    }
  }

  {
    std::vector<std::pair<Vec, std::size_t>> sorted;
    sorted.reserve(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i)
      sorted.emplace_back(nodes[i].point().ambient, i);
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i)
      if (sorted[i - 1].first == sorted[i].first)
        throw error(errc::duplicate_node,
                    "nodes[" + std::to_string(sorted[i].second) +
                        "].position duplicates nodes[" +
                        std::to_string(sorted[i - 1].second) + "]");
  }

  return NodeSet{std::move(manifold), std::move(patch), std::move(chart),
                 weights, mode, std::move(nodes)};
}

void write_nodes(const std::filesystem::path& path, const NodeSet& set) {
  json j;
  j["format_version"] = 1;
  json manifold;
  manifold["kind"] = set.manifold.kind_name();
  switch (set.manifold.kind()) {
    case ManifoldKind::Sphere:
      manifold["radius"] = set.manifold.radius();
      break;
    case ManifoldKind::Torus:
      manifold["periods"] = set.manifold.periods();
      break;
    case ManifoldKind::Euclidean:
      manifold["dim"] = set.manifold.dim();
      break;
  }
  j["manifold"] = std::move(manifold);
  j["patch"] = {{"center", set.patch.center().ambient},
                {"geodesic_radius", set.patch.geodesic_radius()}};
  j["chart"] = {{"kind", set.chart.kind_name()}};
  j["weights"] = {{"mu", set.weights.mu},
                  {"delta", set.weights.delta},
                  {"bump_exponent", set.weights.bump_exponent},
                  {"near_node_tol", set.weights.near_node_tol},
                  {"mode", weight_mode_name(set.mode)}};
  json nodes = json::array();
  for (const HermiteNode& node : set.nodes) {
    json data;
    for (const auto& [beta, value] : node.values()) data[beta.str()] = value;
    nodes.push_back({{"position", node.point().ambient},
                     {"data", std::move(data)}});
  }
  j["nodes"] = std::move(nodes);

  std::ofstream out(path);
  if (!out)
    throw error(errc::io, "cannot write node file '" + path.string() + "'");
  out << j.dump(2) << "\n";
  if (!out) throw error(errc::io, "write failed for '" + path.string() + "'");
}

void write_results(const std::filesystem::path& path,
                   const ResultTable& table) {
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (path != "-") {
    file.open(path);
    if (!file)
      throw error(errc::io, "cannot write results to '" + path.string() + "'");
    out = &file;
  }
  for (const std::string& comment : table.comments) *out << "# " << comment << "\n";
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) *out << ",";
    *out << table.columns[c];
  }
  *out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) *out << ",";
      *out << format_double(row[c]);
    }
    *out << "\n";
  }
  for (const std::string& footer : table.footers) *out << "# " << footer << "\n";
  out->flush();
  if (!*out)
    throw error(errc::io, "write failed for '" + path.string() + "'");
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  return cells;
}

double parse_cell(const std::string& cell, const std::string& where) {
  // strtod rather than stod: stod raises out_of_range on subnormals
  const char* begin = cell.c_str();
  char* end = nullptr;
  double value = std::strtod(begin, &end);
  if (end == begin)
    throw error(errc::parse, where + ": bad number '" + cell + "'");
  while (*end != '\0' && std::isspace(static_cast<unsigned char>(*end))) ++end;
  if (*end != '\0')
    throw error(errc::parse, where + ": bad number '" + cell + "'");
  return value;
}

}  // namespace

ResultTable read_results(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw error(errc::io, "cannot open results file '" + path.string() + "'");
  ResultTable table;
  std::string line;
  bool header_seen = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string text = line.substr(line.find_first_not_of("# "));
      (header_seen && !table.rows.empty() ? table.footers : table.comments)
          .push_back(text);
      continue;
    }
    if (!header_seen) {
      table.columns = split_csv(line);
      header_seen = true;
      continue;
    }
    std::vector<std::string> cells = split_csv(line);
    if (cells.size() != table.columns.size())
      throw error(errc::parse,
                  path.string() + ":" + std::to_string(line_no) +
                      ": expected " + std::to_string(table.columns.size()) +
                      " cells, got " + std::to_string(cells.size()));
    std::vector<double> row;
    row.reserve(cells.size());
    for (const std::string& cell : cells)
      row.push_back(
          parse_cell(cell, path.string() + ":" + std::to_string(line_no)));
    table.rows.push_back(std::move(row));
  }
  if (!header_seen)
    throw error(errc::parse, path.string() + ": missing CSV header line");
  return table;
}

std::vector<Point> read_points(const std::filesystem::path& path,
                               const Manifold& manifold) {
  std::ifstream in(path);
  if (!in)
    throw error(errc::io, "cannot open points file '" + path.string() + "'");
  std::vector<Point> points;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::string where = path.string() + ":" + std::to_string(line_no);
    std::vector<std::string> cells = split_csv(line);
    if (static_cast<int>(cells.size()) != manifold.ambient_dim())
      throw error(errc::parse,
                  where + ": expected " +
                      std::to_string(manifold.ambient_dim()) +
                      " coordinates, got " + std::to_string(cells.size()));
    Vec coords;
    coords.reserve(cells.size());
    for (const std::string& cell : cells)
      coords.push_back(parse_cell(cell, where));
    try {
      points.push_back(manifold.canonical(Point(std::move(coords))));
    } catch (const error& e) {
      throw error(e.code(), where + ": " + e.what());
    }
  }
  return points;
}

}  // namespace hbi
