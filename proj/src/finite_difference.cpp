#include "relaxshock/finite_difference.hpp"

#include <algorithm>
#include <stdexcept>

namespace relaxshock {

std::vector<double> fd_weights(double x0, std::span<const double> x, int order) {
  const int n = static_cast<int>(x.size()) - 1;
  if (n < order) throw std::invalid_argument("fd_weights: stencil too small for order");
  // c[j][k]: weight of x[j] for the k-th derivative.
  std::vector<std::vector<double>> c(n + 1, std::vector<double>(order + 1, 0.0));
  double c1 = 1.0;
  double c4 = x[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i <= n; ++i) {
    const int mn = std::min(i, order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n + 1);
  for (int j = 0; j <= n; ++j) w[j] = c[j][order];
  return w;
}

std::vector<double> fd_derivative(std::span<const double> x, std::span<const double> f,
                                  int points, int order) {
  const std::size_t n = x.size();
  if (f.size() != n) throw std::invalid_argument("fd_derivative: size mismatch");
  const std::size_t m = std::min<std::size_t>(static_cast<std::size_t>(points), n);
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t start = i >= m / 2 ? i - m / 2 : 0;
    start = std::min(start, n - m);
    const auto w = fd_weights(x[i], x.subspan(start, m), order);
    double acc = 0.0;
    for (std::size_t j = 0; j < m; ++j) acc += w[j] * f[start + j];
    out[i] = acc;
  }
  return out;
}

}  // namespace relaxshock
