#include <map>
#include <random>

#include <doctest.h>

#include "hbi/multiindex.hpp"
#include "helpers.hpp"

using namespace hbi;

TEST_CASE("multi-index validation, order, and string form") {
  MultiIndex b({1, 0, 2});
  CHECK(b.order() == 3);
  CHECK(b.str() == "1,0,2");
  CHECK(MultiIndex::parse("1,0,2") == b);
  CHECK(MultiIndex::zero(2).is_zero());
  CHECK_THROWS_AS(MultiIndex({-1, 0}), error);
  CHECK_THROWS_AS(MultiIndex({}), error);
  CHECK_THROWS_AS(MultiIndex::parse("1,x"), error);
  CHECK_THROWS_AS(MultiIndex::parse(""), error);
  CHECK_THROWS_AS(MultiIndex::parse("-1,0"), error);
  CHECK_THROWS_AS(MultiIndex::parse("1,0", 3), error);
}

TEST_CASE("multi-index sets require the zero index and reject duplicates") {
  CHECK_THROWS_AS(MultiIndexSet({MultiIndex({1, 0})}), error);
  CHECK_THROWS_AS(
      MultiIndexSet({MultiIndex({0, 0}), MultiIndex({0, 0})}), error);
  CHECK_THROWS_AS(MultiIndexSet({MultiIndex({0, 0}), MultiIndex({0})}), error);
  MultiIndexSet s({MultiIndex({1, 0}), MultiIndex({0, 0})});
  CHECK(s.size() == 2);
  CHECK(s.contains(MultiIndex({1, 0})));
  CHECK_FALSE(s.contains(MultiIndex({0, 1})));
}

TEST_CASE("global order k") {
  std::vector<MultiIndexSet> lagrange = {MultiIndexSet::lagrange(2),
                                         MultiIndexSet::lagrange(2)};
  CHECK(global_order_k(lagrange) == 0);

  std::vector<MultiIndexSet> mixed = {
      MultiIndexSet({MultiIndex({0, 0}), MultiIndex({1, 0})}),
      MultiIndexSet({MultiIndex({0, 0}), MultiIndex({0, 2})})};
  CHECK(global_order_k(mixed) == 2);

  std::vector<MultiIndexSet> single = {MultiIndexSet::lagrange(2)};
  CHECK(global_order_k(single) == 0);

  CHECK_THROWS_AS(global_order_k({}), error);
}

TEST_CASE("completeness order") {
  CHECK(completeness_order(MultiIndexSet::lagrange(1)) == 0);
  CHECK(completeness_order(MultiIndexSet(
            {MultiIndex({0, 0}), MultiIndex({1, 0}), MultiIndex({0, 1})})) ==
        1);
  // (0,2) missing blocks q = 2
  CHECK(completeness_order(MultiIndexSet(
            {MultiIndex({0, 0}), MultiIndex({1, 0}), MultiIndex({0, 1}),
             MultiIndex({2, 0}), MultiIndex({1, 1})})) == 1);
}

TEST_CASE("complete sets have the advertised completeness order") {
  for (int m = 1; m <= 3; ++m) {
    for (int q = 0; q <= 4; ++q) {
      MultiIndexSet set = MultiIndexSet::complete(m, q);
      CHECK(completeness_order(set) == q);
      // brute-force enumeration over a bounding grid
      std::size_t expected = 0;
      int cells = 1;
      for (int j = 0; j < m; ++j) cells *= (q + 1);
      for (int code = 0; code < cells; ++code) {
        int rest = code, total = 0;
        for (int j = 0; j < m; ++j) {
          total += rest % (q + 1);
          rest /= (q + 1);
        }
        if (total <= q) ++expected;
      }
      CHECK(set.size() == expected);
    }
  }
}

TEST_CASE("taylor_eval basics") {
  MultiIndexSet lag = MultiIndexSet::lagrange(1);
  std::map<MultiIndex, double> constant{{MultiIndex::zero(1), 7.5}};
  CHECK(taylor_eval({0.3}, {0.0}, lag, constant) == 7.5);

  MultiIndexSet full = MultiIndexSet::complete(2, 1);
  std::map<MultiIndex, double> data{{MultiIndex({0, 0}), 1.0},
                                    {MultiIndex({1, 0}), 2.0},
                                    {MultiIndex({0, 1}), 3.0}};
  CHECK(taylor_eval({0.5, 1.0}, {0.0, 0.0}, full, data) ==
        doctest::Approx(5.0).epsilon(1e-15));
  // all monomials vanish at the center
  CHECK(taylor_eval({0.4, -0.2}, {0.4, -0.2}, full, data) == 1.0);

  std::map<MultiIndex, double> short_data{{MultiIndex({0, 0}), 1.0}};
  CHECK_THROWS_AS(taylor_eval({0.0, 0.0}, {0.0, 0.0}, full, short_data),
                  error);
  std::map<MultiIndex, double> wrong_key{{MultiIndex({0, 0}), 1.0},
                                         {MultiIndex({1, 0}), 2.0},
                                         {MultiIndex({2, 0}), 3.0}};
  try {
    taylor_eval({0.0, 0.0}, {0.0, 0.0}, full, wrong_key);
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.code() == errc::inconsistent_data);
  }
}

TEST_CASE("taylor_eval is linear in the data") {
  std::mt19937_64 rng(5);
  MultiIndexSet set = MultiIndexSet::complete(2, 2);
  for (int trial = 0; trial < 50; ++trial) {
    std::map<MultiIndex, double> d1, d2, combo;
    double a = 2.0 * hbitest::uniform01(rng) - 1.0;
    double b = 2.0 * hbitest::uniform01(rng) - 1.0;
    for (const MultiIndex& beta : set) {
      double x = 2.0 * hbitest::uniform01(rng) - 1.0;
      double y = 2.0 * hbitest::uniform01(rng) - 1.0;
      d1.emplace(beta, x);
      d2.emplace(beta, y);
      combo.emplace(beta, a * x + b * y);
    }
    Vec v = {hbitest::uniform01(rng), hbitest::uniform01(rng)};
    Vec vc = {0.1, -0.2};
    double lhs = taylor_eval(v, vc, set, combo);
    double rhs = a * taylor_eval(v, vc, set, d1) + b * taylor_eval(v, vc, set, d2);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
  }
}

TEST_CASE("complete Taylor data reproduces polynomials exactly") {
  // p(v) = a + b v1 + c v2 + d v1^2 + e v1 v2 + f v2^2
  const double a = 0.7, b = -1.2, c = 0.4, d = 2.0, e = -0.6, f = 1.1;
  auto p = [&](const Vec& v) {
    return a + b * v[0] + c * v[1] + d * v[0] * v[0] + e * v[0] * v[1] +
           f * v[1] * v[1];
  };
  std::mt19937_64 rng(8);
  MultiIndexSet set = MultiIndexSet::complete(2, 2);
  for (int trial = 0; trial < 20; ++trial) {
    Vec vc = {2.0 * hbitest::uniform01(rng) - 1.0,
              2.0 * hbitest::uniform01(rng) - 1.0};
    std::map<MultiIndex, double> data{
        {MultiIndex({0, 0}), p(vc)},
        {MultiIndex({1, 0}), b + 2.0 * d * vc[0] + e * vc[1]},
        {MultiIndex({0, 1}), c + e * vc[0] + 2.0 * f * vc[1]},
        {MultiIndex({2, 0}), 2.0 * d},
        {MultiIndex({1, 1}), e},
        {MultiIndex({0, 2}), 2.0 * f}};
    Vec v = {2.0 * hbitest::uniform01(rng) - 1.0,
             2.0 * hbitest::uniform01(rng) - 1.0};
    CHECK(taylor_eval(v, vc, set, data) ==
          doctest::Approx(p(v)).epsilon(1e-12));
  }
}

TEST_CASE("higher-order extra terms contribute additively") {
  // Delta may contain indices beyond its complete part.
  MultiIndexSet set({MultiIndex({0}), MultiIndex({3})});
  std::map<MultiIndex, double> data{{MultiIndex({0}), 1.0},
                                    {MultiIndex({3}), 6.0}};
  // 1 + 6 * (0.5)^3 / 3! = 1 + 0.125
  CHECK(taylor_eval({0.5}, {0.0}, set, data) ==
        doctest::Approx(1.125).epsilon(1e-15));
}
