#pragma once

#include <optional>
#include <vector>

#include "relaxshock/fields.hpp"
#include "relaxshock/shock_profile.hpp"

namespace relaxshock {

struct ShiftState {
  double X = 0.0;
  double Xdot = 0.0;
  double nu = 0.0;           // weight amplitude
  double M = 0.0;            // shift gain
  double sigma_minus = 0.0;  // sqrt(-p'(v_minus))
  double alpha_minus = 0.0;  // (gamma + 1) / (2 gamma sigma_minus p(v_minus))
  double max_abs_xdot = 0.0;
  const ProfileTable* profile = nullptr;
};

/// M = 9 (gamma + 1) sigma_-^3 v_-^2 / (16 gamma p(v_-)).
double shift_gain(const ShockData& shock, const GasModel& model);

/// Starts at X = 0. nu defaults to sqrt(delta); an explicit value must
/// satisfy delta < nu <= sqrt(delta) (ConfigError otherwise). The profile
/// must outlive the state.
ShiftState make_shift_state(const ProfileTable& profile, std::optional<double> nu = std::nullopt);

/// a(xi1) = 1 + nu (p(v_-) - p(v_s(xi1))) / delta, in [1, 1 + nu].
double weight(double xi1, const ShiftState& state);

/// a'(xi1) = -(nu / delta) p(v_s)'(xi1) >= 0.
double weight_slope(double xi1, const ShiftState& state);

struct ShiftIntegrals {
  double I1 = 0.0;
  double I2 = 0.0;
};

/// The two integrals of the shift ODE evaluated against the profile shifted
/// by state.X, trapezoid rule over the physical cells.
ShiftIntegrals shift_integrals(const FieldState& fields, const ShiftState& state);

/// Xdot = -(M / delta) (I1 - I2).
double shift_rate(const FieldState& fields, const ShiftState& state);

/// Forward Euler: X += dt * Xdot; records Xdot and its running max.
void advance_shift(ShiftState& state, double xdot, double dt);

/// Profile samples at the physical xi1 cell centers, shifted by X.
struct ShiftedProfile {
  std::vector<double> v, dv, u1, pi11, pi2, a, da;
};
ShiftedProfile sample_shifted_profile(const Grid& grid, const ShiftState& state);

}  // namespace relaxshock
