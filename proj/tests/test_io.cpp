#include <cstring>
#include <fstream>
#include <random>

#include <doctest.h>

#include "hbi/io.hpp"
#include "helpers.hpp"

using namespace hbi;

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

const char* kMinimalNodeFile = R"({
  "format_version": 1,
  "manifold": {"kind": "sphere", "radius": 1.0},
  "patch": {"center": [0.0, 0.0, 1.0], "geodesic_radius": 0.8},
  "chart": {"kind": "stereographic"},
  "weights": {"mu": 1.0, "mode": "global"},
  "nodes": [
    {"position": [0.0, 0.0, 1.0], "data": {"0,0": 1.0}}
  ]
})";

}  // namespace

TEST_CASE("minimal node file parses") {
  hbitest::TempDir dir("io-minimal");
  auto path = dir.file("nodes.json");
  write_text(path, kMinimalNodeFile);
  NodeSet set = read_nodes(path);
  CHECK(set.manifold.kind() == ManifoldKind::Sphere);
  CHECK(set.chart.kind() == ChartKind::Stereographic);
  CHECK(set.mode == WeightMode::Global);
  REQUIRE(set.nodes.size() == 1);
  CHECK(set.nodes[0].delta_set() == MultiIndexSet::lagrange(2));
  CHECK(set.nodes[0].value(MultiIndex::zero(2)) == 1.0);

  try {
    read_nodes(dir.file("absent.json"));
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.code() == errc::io);
  }
}

TEST_CASE("node file field errors are located") {
  hbitest::TempDir dir("io-errors");
  auto path = dir.file("nodes.json");
  auto expect_error = [&](const std::string& text, errc code,
                          const std::string& needle) {
    write_text(path, text);
    try {
      read_nodes(path);
      FAIL_CHECK("expected an error containing '" << needle << "'");
    } catch (const error& e) {
      CHECK(e.code() == code);
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };

  std::string base = kMinimalNodeFile;

  SUBCASE("not json at all") {
    expect_error("{ nope", errc::parse, "nodes.json");
  }
  SUBCASE("missing format_version") {
    std::string t = base;
    t.replace(t.find("format_version"), 14, "format_versioX");
    expect_error(t, errc::parse, "format_version");
  }
  SUBCASE("unsupported version") {
    std::string t = base;
    t.replace(t.find(": 1,"), 4, ": 9,");
    expect_error(t, errc::parse, "unsupported version");
  }
  SUBCASE("unknown manifold kind") {
    std::string t = base;
    t.replace(t.find("\"sphere\""), 8, "\"cone\"");
    expect_error(t, errc::parse, "manifold.kind");
  }
  SUBCASE("bad radius") {
    std::string t = base;
    t.replace(t.find("\"radius\": 1.0"), 13, "\"radius\": -1.0");
    expect_error(t, errc::parse, "manifold");
  }
  SUBCASE("off-manifold node position") {
    std::string t = base;
    t.replace(t.find("[0.0, 0.0, 1.0], \"data\""), 15, "[0.0, 0.0, 1.1]");
    expect_error(t, errc::invalid_point, "nodes[0]");
  }
  SUBCASE("bad multi-index key") {
    std::string t = base;
    t.replace(t.find("\"0,0\""), 5, "\"0,x\"");
    expect_error(t, errc::parse, "nodes[0].data key");
  }
  SUBCASE("multi-index dimension mismatch") {
    std::string t = base;
    t.replace(t.find("\"0,0\""), 5, "\"0,0,0\"");
    expect_error(t, errc::parse, "nodes[0].data key");
  }
  SUBCASE("missing zero index") {
    std::string t = base;
    t.replace(t.find("\"0,0\": 1.0"), 10, "\"1,0\": 1.0");
    expect_error(t, errc::invalid_input, "nodes[0]");
  }
  SUBCASE("unknown weight mode") {
    std::string t = base;
    t.replace(t.find("\"global\""), 8, "\"both\"");
    expect_error(t, errc::parse, "weights.mode");
  }
  SUBCASE("patch too large for the sphere") {
    std::string t = base;
    t.replace(t.find("0.8"), 3, "4.0");
    expect_error(t, errc::invalid_input, "patch");
  }
  SUBCASE("duplicate node positions") {
    std::string t = base;
    t.replace(t.find("{\"position\": [0.0, 0.0, 1.0], \"data\": {\"0,0\": 1.0}}"),
              52,
              "{\"position\": [0.0, 0.0, 1.0], \"data\": {\"0,0\": 1.0}},\n"
              "    {\"position\": [0.0, 0.0, 1.0], \"data\": {\"0,0\": 2.0}}");
    expect_error(t, errc::duplicate_node, "nodes");
  }
}

TEST_CASE("node files round trip") {
  hbitest::TempDir dir("io-roundtrip");
  Patch patch = hbitest::unit_cap();
  Chart chart = Chart::for_patch(patch);
  TestFunction f = builtin("gaussian", 2);
  auto pts = sample_patch(patch, 12, SampleStrategy::QuasiUniform, 51);
  WeightConfig weights = WeightConfig::defaults_for_order(1);
  weights.delta = 0.37;
  NodeSet original{patch.manifold(), patch, chart, weights,
                   WeightMode::Localized,
                   hbitest::hermite_data(f, chart, pts, 1)};
  auto path = dir.file("roundtrip.json");
  write_nodes(path, original);
  NodeSet loaded = read_nodes(path);

  CHECK(loaded.manifold == original.manifold);
  CHECK(loaded.patch.center().ambient == original.patch.center().ambient);
  CHECK(loaded.patch.geodesic_radius() == original.patch.geodesic_radius());
  CHECK(loaded.chart == original.chart);
  CHECK(loaded.weights.mu == original.weights.mu);
  CHECK(loaded.weights.delta == original.weights.delta);
  CHECK(loaded.weights.bump_exponent == original.weights.bump_exponent);
  CHECK(loaded.weights.near_node_tol == original.weights.near_node_tol);
  CHECK(loaded.mode == original.mode);
  REQUIRE(loaded.nodes.size() == original.nodes.size());
  for (std::size_t i = 0; i < loaded.nodes.size(); ++i) {
    CHECK(loaded.nodes[i].point().ambient ==
          original.nodes[i].point().ambient);
    CHECK(loaded.nodes[i].delta_set() == original.nodes[i].delta_set());
    CHECK(loaded.nodes[i].values() == original.nodes[i].values());
  }
}

TEST_CASE("results CSV round trips bitwise") {
  hbitest::TempDir dir("io-results");
  auto path = dir.file("results.csv");

  SUBCASE("empty rows give a header-only file") {
    ResultTable table;
    table.comments = {"config: {}"};
    table.columns = {"a", "b"};
    write_results(path, table);
    ResultTable loaded = read_results(path);
    CHECK(loaded.columns == table.columns);
    CHECK(loaded.rows.empty());
    CHECK(loaded.comments == table.comments);
  }

  SUBCASE("values survive a write/read cycle exactly") {
    std::mt19937_64 rng(60);
    ResultTable table;
    table.columns = {"x", "y", "z"};
    for (int i = 0; i < 1000; ++i) {
      double a = (hbitest::uniform01(rng) - 0.5) * 2e3;
      double b = std::exp(40.0 * (hbitest::uniform01(rng) - 0.5));
      double c = -hbitest::uniform01(rng) * 1e-7;
      table.rows.push_back({a, b, c});
    }
    table.rows.push_back({0.0, -0.0, 1e-308});
    table.rows.push_back({0.1, 1.0 / 3.0, 9007199254740993.0});
    table.footers = {"order_fit: {\"slope\": 2.0}"};
    write_results(path, table);
    ResultTable loaded = read_results(path);
    REQUIRE(loaded.rows.size() == table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i)
      for (std::size_t j = 0; j < table.rows[i].size(); ++j) {
        double x = table.rows[i][j], y = loaded.rows[i][j];
        CHECK(std::memcmp(&x, &y, sizeof(double)) == 0);
      }
    CHECK(loaded.footers == table.footers);
  }

  SUBCASE("malformed cells are rejected with a location") {
    write_text(path, "a,b\n1.0,oops\n");
    try {
      read_results(path);
      CHECK(false);
    } catch (const error& e) {
      CHECK(e.code() == errc::parse);
      CHECK(std::string(e.what()).find(":2") != std::string::npos);
    }
  }
}

TEST_CASE("points files") {
  hbitest::TempDir dir("io-points");
  auto path = dir.file("points.csv");
  Manifold sphere = Manifold::sphere(1.0);

  write_text(path, "# probe points\n1,0,0\n0,0,1\n");
  auto pts = read_points(path, sphere);
  REQUIRE(pts.size() == 2);
  CHECK(pts[0].ambient == Vec{1.0, 0.0, 0.0});

  write_text(path, "1,0\n");
  CHECK_THROWS_AS(read_points(path, sphere), error);

  write_text(path, "1,0,0\n0.5,0.5,0.5\n");
  try {
    read_points(path, sphere);
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.code() == errc::invalid_point);
    CHECK(std::string(e.what()).find(":2") != std::string::npos);
  }
}
