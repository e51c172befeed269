#pragma once

#include <functional>
#include <string>

#include "hbi/multiindex.hpp"

namespace hbi {

/// Closed-form function of the chart coordinates v with analytic partial
/// derivatives up to `max_order`. Used to generate exact Hermite data.
class TestFunction {
 public:
  using Evaluator = std::function<double(const Vec& v, const MultiIndex& beta)>;

  TestFunction(std::string name, int dim, int max_order, Evaluator evaluator);

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  int max_order() const { return max_order_; }

  double operator()(const Vec& v) const;
  /// D^beta f(v); throws errc::order_exceeded for |beta| > max_order.
  double derivative(const Vec& v, const MultiIndex& beta) const;

 private:
  std::string name_;
  int dim_;
  int max_order_;
  Evaluator evaluator_;
};

/// Builtins: "constant" (5), "linear" (sum (2+j) v_j + 1), "quadratic",
/// "trig-product" (prod cos v_j), "gaussian" (exp(-|v|^2)).
TestFunction builtin(const std::string& name, int dim);

std::vector<std::string> builtin_names();

/// |analytic - central finite difference| at v; guards hand-coded partials.
double derivative_check(const TestFunction& f, const Vec& v,
                        const MultiIndex& beta, double fd_step);

}  // namespace hbi
