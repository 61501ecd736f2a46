#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace relaxshock {

/// Fornberg finite-difference weights: returns w such that
/// sum_j w[j] f(x[j]) approximates the `order`-th derivative at x0.
std::vector<double> fd_weights(double x0, std::span<const double> x, int order);

/// Derivative of tabulated data on a non-uniform grid using `points`-wide
/// stencils, centered where possible and one-sided near the ends.
std::vector<double> fd_derivative(std::span<const double> x, std::span<const double> f,
                                  int points, int order = 1);

}  // namespace relaxshock
