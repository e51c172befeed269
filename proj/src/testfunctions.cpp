#include "hbi/testfunctions.hpp"

#include <cmath>

#include "detail/finite_difference.hpp"

namespace hbi {

TestFunction::TestFunction(std::string name, int dim, int max_order,
                           Evaluator evaluator)
    : name_(std::move(name)),
      dim_(dim),
      max_order_(max_order),
      evaluator_(std::move(evaluator)) {
  if (dim_ < 1 || max_order_ < 0 || !evaluator_)
    throw error(errc::invalid_input, "malformed test function");
}

double TestFunction::operator()(const Vec& v) const {
  return derivative(v, MultiIndex::zero(dim_));
}

double TestFunction::derivative(const Vec& v, const MultiIndex& beta) const {
  if (beta.dim() != dim_ || static_cast<int>(v.size()) != dim_)
    throw error(errc::invalid_input, "test function dimension mismatch");
  if (beta.order() > max_order_)
    throw error(errc::order_exceeded,
                "derivative order " + std::to_string(beta.order()) +
                    " exceeds max_order " + std::to_string(max_order_) +
                    " of builtin '" + name_ + "'");
  return evaluator_(v, beta);
}

namespace {

constexpr int kBuiltinMaxOrder = 12;

// Physicists' Hermite polynomial H_b(x).
double hermite(int b, double x) {
  double h0 = 1.0;
  if (b == 0) return h0;
  double h1 = 2.0 * x;
  for (int i = 1; i < b; ++i) {
    double h2 = 2.0 * x * h1 - 2.0 * i * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

TestFunction make_constant(int m) {
  return TestFunction("constant", m, kBuiltinMaxOrder,
                      [](const Vec&, const MultiIndex& beta) {
                        return beta.is_zero() ? 5.0 : 0.0;
                      });
}

// sum_j (2+j) v_j + 1
TestFunction make_linear(int m) {
  return TestFunction(
      "linear", m, kBuiltinMaxOrder, [](const Vec& v, const MultiIndex& beta) {
        if (beta.is_zero()) {
          double s = 1.0;
          for (std::size_t j = 0; j < v.size(); ++j) s += (2.0 + j) * v[j];
          return s;
        }
        if (beta.order() == 1) {
          for (int j = 0; j < beta.dim(); ++j)
            if (beta.components()[j] == 1) return 2.0 + j;
        }
        return 0.0;
      });
}

// sum_j (j+1) v_j^2 + sum_{j<l} v_j v_l + sum_j (2+j) v_j + 3
TestFunction make_quadratic(int m) {
  return TestFunction(
      "quadratic", m, kBuiltinMaxOrder,
      [](const Vec& v, const MultiIndex& beta) {
        const int dim = beta.dim();
        if (beta.is_zero()) {
          double s = 3.0;
          for (int j = 0; j < dim; ++j) {
            s += (j + 1.0) * v[j] * v[j] + (2.0 + j) * v[j];
            for (int l = j + 1; l < dim; ++l) s += v[j] * v[l];
          }
          return s;
        }
        if (beta.order() == 1) {
          for (int j = 0; j < dim; ++j) {
            if (beta.components()[j] == 1) {
              double s = 2.0 * (j + 1.0) * v[j] + (2.0 + j);
              for (int l = 0; l < dim; ++l)
                if (l != j) s += v[l];
              return s;
            }
          }
        }
        if (beta.order() == 2) {
          for (int j = 0; j < dim; ++j)
            if (beta.components()[j] == 2) return 2.0 * (j + 1.0);
          return 1.0;  // mixed second partial
        }
        return 0.0;
      });
}

// prod_j cos(v_j); each derivative is a phase shift by beta_j * pi/2.
TestFunction make_trig_product(int m) {
  return TestFunction("trig-product", m, kBuiltinMaxOrder,
                      [](const Vec& v, const MultiIndex& beta) {
                        const double half_pi = std::acos(-1.0) / 2.0;
                        double prod = 1.0;
                        for (int j = 0; j < beta.dim(); ++j)
                          prod *= std::cos(v[j] + beta.components()[j] * half_pi);
                        return prod;
                      });
}

// exp(-|v|^2); per-axis derivatives via Hermite polynomials.
TestFunction make_gaussian(int m) {
  return TestFunction(
      "gaussian", m, kBuiltinMaxOrder,
      [](const Vec& v, const MultiIndex& beta) {
        double prod = 1.0;
        double exponent = 0.0;
        for (int j = 0; j < beta.dim(); ++j) {
          int b = beta.components()[j];
          exponent += v[j] * v[j];
          prod *= (b % 2 == 0 ? 1.0 : -1.0) * hermite(b, v[j]);
        }
        return prod * std::exp(-exponent);
      });
}

}  // namespace

std::vector<std::string> builtin_names() {
  return {"constant", "linear", "quadratic", "trig-product", "gaussian"};
}

TestFunction builtin(const std::string& name, int dim) {
  if (dim < 1)
    throw error(errc::invalid_input, "test function dimension must be >= 1");
  if (name == "constant") return make_constant(dim);
  if (name == "linear") return make_linear(dim);
  if (name == "quadratic") return make_quadratic(dim);
  if (name == "trig-product") return make_trig_product(dim);
  if (name == "gaussian") return make_gaussian(dim);
  std::string known;
  for (const std::string& n : builtin_names()) {
    if (!known.empty()) known += ", ";
    known += n;
  }
  throw error(errc::unknown_function,
              "unknown test function '" + name + "' (builtins: " + known + ")");
}

double derivative_check(const TestFunction& f, const Vec& v,
                        const MultiIndex& beta, double fd_step) {
  if (!(fd_step > 0.0))
    throw error(errc::invalid_input, "fd_step must be positive");
  double analytic = f.derivative(v, beta);
  double approx = detail::central_difference(
      [&](const Vec& point) { return f(point); }, v, beta, fd_step);
  return std::abs(analytic - approx);
}

}  // namespace hbi
