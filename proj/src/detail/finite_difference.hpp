#pragma once

#include <vector>

#include "hbi/errors.hpp"
#include "hbi/multiindex.hpp"

namespace hbi::detail {

struct Stencil1D {
  std::vector<int> offsets;
  std::vector<double> weights;  // to be divided by h^order
};

// Minimal symmetric central stencils; order 0 is the identity.
inline const Stencil1D& central_stencil(int order) {
  static const Stencil1D table[] = {
      {{0}, {1.0}},
      {{-1, 1}, {-0.5, 0.5}},
      {{-1, 0, 1}, {1.0, -2.0, 1.0}},
      {{-2, -1, 1, 2}, {-0.5, 1.0, -1.0, 0.5}},
      {{-2, -1, 0, 1, 2}, {1.0, -4.0, 6.0, -4.0, 1.0}},
  };
  if (order < 0 || order > 4)
    throw error(errc::order_exceeded,
                "central differences support per-axis orders up to 4");
  return table[order];
}

// Tensor-product central difference approximation of D^beta f at v.
template <class F>
double central_difference(F&& f, const Vec& v, const MultiIndex& beta,
                          double h) {
  const int dim = beta.dim();
  std::vector<const Stencil1D*> stencils(dim);
  double scale = 1.0;
  for (int j = 0; j < dim; ++j) {
    stencils[j] = &central_stencil(beta.components()[j]);
    for (int b = 0; b < beta.components()[j]; ++b) scale /= h;
  }
  std::vector<std::size_t> pick(dim, 0);
  Vec point(v);
  double sum = 0.0;
  while (true) {
    double weight = 1.0;
    for (int j = 0; j < dim; ++j) {
      point[j] = v[j] + h * stencils[j]->offsets[pick[j]];
      weight *= stencils[j]->weights[pick[j]];
    }
    sum += weight * f(point);
    int j = 0;
    for (; j < dim; ++j) {
      if (++pick[j] < stencils[j]->offsets.size()) break;
      pick[j] = 0;
    }
    if (j == dim) break;
  }
  return sum * scale;
}

}  // namespace hbi::detail
