#include <cmath>
#include <random>

#include <doctest.h>

#include "hbi/testfunctions.hpp"
#include "helpers.hpp"

using namespace hbi;

TEST_CASE("builtin lookup") {
  for (const std::string& name : builtin_names())
    CHECK(builtin(name, 2).name() == name);
  try {
    builtin("nope", 2);
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.code() == errc::unknown_function);
  }
  CHECK_THROWS_AS(builtin("gaussian", 0), error);
}

TEST_CASE("constant and linear partials") {
  TestFunction c = builtin("constant", 2);
  CHECK(c({0.3, -0.4}) == 5.0);
  CHECK(c.derivative({0.3, -0.4}, MultiIndex({1, 0})) == 0.0);
  CHECK(c.derivative({0.3, -0.4}, MultiIndex({2, 1})) == 0.0);

  TestFunction l = builtin("linear", 2);
  // slope vector (2, 3)
  CHECK(l.derivative({0.0, 0.0}, MultiIndex({1, 0})) == 2.0);
  CHECK(l.derivative({9.0, -3.0}, MultiIndex({1, 0})) == 2.0);
  CHECK(l.derivative({0.5, 0.5}, MultiIndex({0, 1})) == 3.0);
  CHECK(l({1.0, 1.0}) == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(l.derivative({0.0, 0.0}, MultiIndex({1, 1})) == 0.0);
}

TEST_CASE("quadratic partials") {
  TestFunction q = builtin("quadratic", 2);
  Vec v = {0.4, -0.7};
  // f = v1^2 + 2 v2^2 + v1 v2 + 2 v1 + 3 v2 + 3
  double expected = 0.16 + 2.0 * 0.49 + 0.4 * (-0.7) + 0.8 - 2.1 + 3.0;
  CHECK(q(v) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(q.derivative(v, MultiIndex({1, 0})) ==
        doctest::Approx(2.0 * 0.4 - 0.7 + 2.0).epsilon(1e-14));
  CHECK(q.derivative(v, MultiIndex({0, 1})) ==
        doctest::Approx(4.0 * (-0.7) + 0.4 + 3.0).epsilon(1e-14));
  CHECK(q.derivative(v, MultiIndex({2, 0})) == 2.0);
  CHECK(q.derivative(v, MultiIndex({0, 2})) == 4.0);
  CHECK(q.derivative(v, MultiIndex({1, 1})) == 1.0);
  CHECK(q.derivative(v, MultiIndex({2, 1})) == 0.0);
}

TEST_CASE("gaussian and trig-product partials") {
  TestFunction g = builtin("gaussian", 2);
  CHECK(g.derivative({0.0, 0.0}, MultiIndex({2, 0})) == -2.0);
  Vec v = {0.3, -0.5};
  double e = std::exp(-(v[0] * v[0] + v[1] * v[1]));
  CHECK(g.derivative(v, MultiIndex({1, 1})) ==
        doctest::Approx(4.0 * v[0] * v[1] * e).epsilon(1e-14));
  CHECK(g.derivative(v, MultiIndex({1, 0})) ==
        doctest::Approx(-2.0 * v[0] * e).epsilon(1e-14));
  // third order along one axis: -(8x^3 - 12x) e^{-x^2} * e^{-y^2}
  CHECK(g.derivative(v, MultiIndex({3, 0})) ==
        doctest::Approx(-(8.0 * 0.027 - 12.0 * 0.3) * e).epsilon(1e-13));

  TestFunction t = builtin("trig-product", 2);
  CHECK(t.derivative(v, MultiIndex({1, 0})) ==
        doctest::Approx(-std::sin(v[0]) * std::cos(v[1])).epsilon(1e-14));
  CHECK(t.derivative(v, MultiIndex({2, 0})) ==
        doctest::Approx(-std::cos(v[0]) * std::cos(v[1])).epsilon(1e-14));

  try {
    g.derivative(v, MultiIndex({13, 0}));
    CHECK(false);
  } catch (const error& e2) {
    CHECK(e2.code() == errc::order_exceeded);
  }
}

TEST_CASE("derivative_check residuals") {
  TestFunction c = builtin("constant", 2);
  CHECK(derivative_check(c, {0.1, 0.2}, MultiIndex({1, 0}), 1e-4) <= 1e-12);

  TestFunction l = builtin("linear", 2);
  CHECK(derivative_check(l, {0.1, 0.2}, MultiIndex({1, 0}), 1e-4) <= 1e-10);
  CHECK(derivative_check(l, {0.1, 0.2}, MultiIndex({0, 1}), 1e-4) <= 1e-10);
}

TEST_CASE("derivative_check decays at second order in the step") {
  TestFunction g = builtin("gaussian", 2);
  // steps chosen where truncation dominates rounding noise
  double coarse = derivative_check(g, {0.3, 0.2}, MultiIndex({1, 1}), 1e-2);
  double fine = derivative_check(g, {0.3, 0.2}, MultiIndex({1, 1}), 5e-3);
  CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.15));
  // at the spec's operating step the residual is far below the gate
  CHECK(derivative_check(g, {0.3, 0.2}, MultiIndex({1, 1}), 1e-4) <= 1e-6);
}

TEST_CASE("every builtin passes derivative_check at random chart points") {
  std::mt19937_64 rng(31);
  for (const std::string& name : builtin_names()) {
    TestFunction f = builtin(name, 2);
    for (int trial = 0; trial < 100; ++trial) {
      Vec v = {1.6 * hbitest::uniform01(rng) - 0.8,
               1.6 * hbitest::uniform01(rng) - 0.8};
      for (const MultiIndex& beta : MultiIndexSet::complete(2, 3)) {
        // 1e-6 is reachable for orders <= 2; third-order stencils bottom
        // out near 1e-5 in double precision
        double tol = beta.order() <= 2 ? 1e-6 : 1e-4;
        double step = beta.order() <= 2 ? 5e-4 : 2e-3;
        CHECK(derivative_check(f, v, beta, step) <= tol);
      }
    }
  }
}
