#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

namespace relaxshock {

enum class GridMode { oneD, threeD };

/// Truncated slab [-L, L] x T^2 with cell-centered samples. The xi1
/// direction carries two ghost cells on each side; transverse neighbors
/// wrap by index.
struct Grid {
  double L = 100.0;
  std::size_t n1 = 2048;
  std::size_t n2 = 1;
  std::size_t n3 = 1;
  bool periodic_xi1 = false;

  static constexpr std::size_t ghost = 2;

  GridMode mode() const noexcept { return n2 == 1 && n3 == 1 ? GridMode::oneD : GridMode::threeD; }
  double dx1() const noexcept { return 2.0 * L / static_cast<double>(n1); }
  double dx2() const noexcept { return 1.0 / static_cast<double>(n2); }
  double dx3() const noexcept { return 1.0 / static_cast<double>(n3); }
  double min_dx() const noexcept;

  std::size_t row() const noexcept { return n1 + 2 * ghost; }
  std::size_t size() const noexcept { return row() * n2 * n3; }
  std::size_t cells() const noexcept { return n1 * n2 * n3; }

  /// Flat index; i may run over [-ghost, n1 + ghost).
  std::size_t index(std::ptrdiff_t i, std::size_t j, std::size_t k) const noexcept {
    return static_cast<std::size_t>(i + static_cast<std::ptrdiff_t>(ghost)) + row() * (j + n2 * k);
  }

  double xi1(std::ptrdiff_t i) const noexcept { return -L + (static_cast<double>(i) + 0.5) * dx1(); }
  double xi2(std::size_t j) const noexcept { return (static_cast<double>(j) + 0.5) * dx2(); }
  double xi3(std::size_t k) const noexcept { return (static_cast<double>(k) + 0.5) * dx3(); }

  /// Throws ConfigError for empty or inconsistent grids.
  void validate() const;
};

/// Field slots. Pi1 is stored as the six independent entries of a
/// symmetric matrix.
enum Field : std::size_t { V, U1, U2, U3, P11, P22, P33, P12, P13, P23, P2, kFieldCount };

inline constexpr std::array<std::string_view, kFieldCount> kFieldNames = {
    "v", "u1", "u2", "u3", "pi11", "pi22", "pi33", "pi12", "pi13", "pi23", "pi2"};

struct FieldState {
  Grid grid;
  std::array<std::vector<double>, kFieldCount> f;
  double t = 0.0;

  FieldState() = default;
  explicit FieldState(const Grid& g);

  double& at(Field q, std::ptrdiff_t i, std::size_t j = 0, std::size_t k = 0) {
    return f[q][grid.index(i, j, k)];
  }
  double at(Field q, std::ptrdiff_t i, std::size_t j = 0, std::size_t k = 0) const {
    return f[q][grid.index(i, j, k)];
  }
};

/// Planar reference state along xi1 (including ghost cells) that the
/// boundary treatment relaxes toward.
struct Background {
  std::array<std::vector<double>, kFieldCount> f;  // each of length grid.row()
};

/// Trapezoid weight of physical cell i along xi1 (times dx1): end cells
/// count half on a bounded slab.
inline double xi1_weight(const Grid& g, std::size_t i) noexcept {
  if (g.periodic_xi1) return g.dx1();
  return (i == 0 || i + 1 == g.n1) ? 0.5 * g.dx1() : g.dx1();
}

/// max |trace Pi1| / max |Pi1| over physical cells (0 when Pi1 vanishes).
double traceless_residual(const FieldState& s);

}  // namespace relaxshock
