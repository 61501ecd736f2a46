#pragma once

#include <cstddef>
#include <vector>

#include "relaxshock/fields.hpp"
#include "relaxshock/gas_dynamics.hpp"
#include "relaxshock/shift_weight.hpp"
#include "relaxshock/shock_profile.hpp"

namespace relaxshock {

struct SolverOptions {
  double cfl = 0.4;
  double hyperdissipation = 0.02;  // coefficient of s_max dx^3 d^4/dxi^4 per direction
  std::size_t sponge_cells = 8;
};

/// Compactly supported C^2 bump added to one field:
///   amplitude * exp(1 - 1 / (1 - (r / width)^2)),  r = |xi1 - center|,
/// times (1 + transverse * cos(2 pi m xi2) cos(2 pi m xi3)) with m = mode.
struct BumpSpec {
  Field component = V;
  double amplitude = 0.0;
  double width = 2.0;
  double center = 0.0;
  double transverse = 0.0;
  int mode = 1;
};

double bump_shape(const BumpSpec& bump, double xi1, double xi2, double xi3);

/// Unperturbed profile sampled on every xi1 cell (ghosts included).
Background profile_background(const ProfileTable& profile, const Grid& grid);

/// Profile plus bumps; Pi completed as a traceless planar tensor. Rejects
/// bumps whose support leaves (-L/2, L/2) or that make v non-positive.
FieldState init_perturbed_shock(const ProfileTable& profile, const Grid& grid,
                                const std::vector<BumpSpec>& bumps);

/// Spatially uniform state.
FieldState constant_state(const Grid& grid, double v, double u1, double u2 = 0.0,
                          double u3 = 0.0);

/// Explicit solver for the moving-frame relaxed system and its Newtonian
/// (tau = 0) counterpart. Holds scratch buffers: one instance per thread.
class RelaxSolver {
 public:
  RelaxSolver(const GasModel& model, const ShockData& shock, const Grid& grid,
              Background background, SolverOptions options = {});

  const GasModel& model() const noexcept { return model_; }
  const ShockData& shock() const noexcept { return shock_; }
  const Grid& grid() const noexcept { return grid_; }
  const SolverOptions& options() const noexcept { return options_; }
  const Background& background() const noexcept { return background_; }

  /// Ghost fill (background values, or wrap when xi1 is periodic) and the
  /// cosine-ramp sponge on the outer sponge_cells of each end.
  void apply_boundaries(FieldState& s) const;
  /// Ghost fill only.
  void fill_ghosts(FieldState& s) const;

  /// Frozen characteristic speed bound
  ///   |u1 - sigma| + |u2| + |u3| + sqrt(gamma rho^(gamma-1) + (4mu/3+lambda)/(tau rho^2)),
  /// maximized over physical cells.
  double max_speed(const FieldState& s) const;
  /// CFL * min dx / max_speed. Throws ConfigError when tau = 0.
  double cfl_dt(const FieldState& s) const;

  /// Exact update of the linear relaxation source over time h with u frozen:
  /// Pi <- S + (Pi - S) exp(-h / (tau rho)). Needs filled ghosts.
  void relax(FieldState& s, double h) const;

  /// Non-stiff right-hand side (transport, pressure, stress divergence and
  /// hyperdissipation) at speed bound s_max. Needs filled ghosts.
  void transport_rhs(const FieldState& s, double s_max, FieldState& out) const;

  /// Full semi-discrete time derivative including the relaxation source.
  FieldState time_derivative(const FieldState& s) const;

  /// Strang macro-step: relax dt/2, SSP-RK2 transport, relax dt/2.
  /// Throws BlowUpError on non-finite values or v <= 0.
  void step(FieldState& s, double dt) const;

  /// Same, preceded by evaluating the shift rate on the incoming state and
  /// followed by the forward Euler shift update.
  void step(FieldState& s, ShiftState& shift, double dt) const;

  /// Newtonian stress S_h(u) written into the Pi slots of `out` on
  /// physical cells and the first ghost layer. Needs filled ghosts in s.
  void newtonian_stress(const FieldState& s, FieldState& out) const;

  /// min(CFL dx / (|u - sigma e1| + c), 0.25 dx^2 rho_min / (4mu/3 + lambda)).
  double newtonian_dt(const FieldState& s) const;

  /// SSP-RK2 step of the classical system with stress S_h(u); on return
  /// the Pi slots hold S_h(u).
  void newtonian_step(FieldState& s, double dt) const;

  void newtonian_rhs(const FieldState& s, double s_max, FieldState& out) const;

 private:
  void boundary_pass(FieldState& s, bool sponge) const;
  void check_state(const FieldState& s) const;
  void rhs_impl(const FieldState& s, const FieldState& stress, double s_max, bool newtonian,
                FieldState& out) const;

  GasModel model_;
  ShockData shock_;
  Grid grid_;
  Background background_;
  SolverOptions options_;
  std::vector<double> sponge_weight_;
  mutable FieldState k_, stage_, stress_;
  mutable std::vector<double> p_;
};

}  // namespace relaxshock
