#pragma once

#include <span>
#include <vector>

#include "hbi/geometry.hpp"

namespace hbi::detail {

// Core of cbf_inverse: assumes canonical, distinct nodes and a canonical
// query point. Shared by the public entry point and the interpolant's
// evaluation path so both routes use the same arithmetic.
std::vector<double> inverse_weights(const Manifold& manifold, const Point& u,
                                    std::span<const Point> nodes, double mu,
                                    double near_tol);

}  // namespace hbi::detail
