#include "relaxshock/fields.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "relaxshock/errors.hpp"

namespace relaxshock {

double Grid::min_dx() const noexcept {
  double d = dx1();
  if (n2 > 1) d = std::min(d, dx2());
  if (n3 > 1) d = std::min(d, dx3());
  return d;
}

void Grid::validate() const {
  std::ostringstream msg;
  if (!(L > 0.0)) msg << "L must be positive; ";
  if (n1 < 16) msg << "N1 must be at least 16; ";
  if (n2 == 0 || n3 == 0) msg << "N2 and N3 must be at least 1; ";
  if (!msg.str().empty()) throw ConfigError(msg.str());
}

FieldState::FieldState(const Grid& g) : grid(g) {
  for (auto& v : f) v.assign(g.size(), 0.0);
}

double traceless_residual(const FieldState& s) {
  const Grid& g = s.grid;
  double max_trace = 0.0;
  double max_pi = 0.0;
  for (std::size_t k = 0; k < g.n3; ++k) {
    for (std::size_t j = 0; j < g.n2; ++j) {
      for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(g.n1); ++i) {
        const std::size_t c = g.index(i, j, k);
        const double a = s.f[P11][c], b = s.f[P22][c], d = s.f[P33][c];
        max_trace = std::max(max_trace, std::abs(a + b + d));
        for (Field q : {P11, P22, P33, P12, P13, P23}) {
          max_pi = std::max(max_pi, std::abs(s.f[q][c]));
        }
      }
    }
  }
  return max_pi > 0.0 ? max_trace / max_pi : 0.0;
}

}  // namespace relaxshock
