#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "relaxshock/gas_dynamics.hpp"

namespace relaxshock {

struct ProfileOptions {
  double tol = 1e-10;       // local error tolerance of the embedded RK pair
  double tail_eps = 1e-6;   // stop when |v - v_pm| < tail_eps * (v_plus - v_minus)
  double max_step = 0.025;  // step cap as a fraction of the characteristic width
  double fixed_step = 0.0;  // > 0 disables error control (convergence studies)
};

/// Sampled traveling-wave profile in the shock frame, pinned so that
/// v_s at xi = 0 is the midpoint of the end states.
struct ProfileTable {
  std::vector<double> xi;
  std::vector<double> v_s;
  std::vector<double> dv_s;  // v_s' from the profile ODE, used as Hermite slopes
  std::vector<double> u1_s;
  std::vector<double> pi11_s;
  std::vector<double> pi2_s;
  double tail_eps = 1e-6;
  ShockData shock;
  GasModel model;
  double rate_minus = 0.0;  // linearized growth rate of v_s - v_minus as xi -> -inf
  double rate_plus = 0.0;   // linearized decay rate of v_plus - v_s as xi -> +inf
  std::size_t pin_index = 0;

  std::size_t size() const noexcept { return xi.size(); }
};

/// Width (4mu/3 + lambda) / (sigma_* delta) of the viscous layer.
double characteristic_width(const ShockData& shock, const GasModel& model);

/// Right-hand side of the profile ODE
///   v' = h(v) / (sigma_*(4mu/3 + lambda) + tau sigma_* h'(v)).
double profile_rhs(double v, const ShockData& shock, const GasModel& model);

/// Algebraic recovery of (u1, pi11, pi2) from v: mass/momentum integrals
/// and the proportional split of the total stress.
double profile_u1(double v, const ShockData& shock);
double profile_stress_sum(double v, const ShockData& shock, const GasModel& model);
double profile_pi11(double v, const ShockData& shock, const GasModel& model);
double profile_pi2(double v, const ShockData& shock, const GasModel& model);

/// Integrates the profile ODE away from the pinning point in both directions.
/// Throws AdmissibilityError when tau exceeds tau_admissible_max or the shock
/// is degenerate, StiffnessError if the ODE denominator collapses.
ProfileTable solve_profile(const ShockData& shock, const GasModel& model,
                           const ProfileOptions& options = {});

struct ProfileSample {
  double v = 0.0;
  double u1 = 0.0;
  double pi11 = 0.0;
  double pi2 = 0.0;
};

/// Monotone cubic Hermite interpolation of v_s with the stored ODE slopes.
/// Outside the table the tails continue with their linearized exponential
/// rates, so the far field is reached continuously.
ProfileSample eval_profile(const ProfileTable& profile, double xi1);

/// d v_s / d xi1, consistent with eval_profile.
double eval_profile_slope(const ProfileTable& profile, double xi1);

/// Symmetric stress tensor (11, 22, 33, 12, 13, 23) of a planar profile:
/// Pi22 = Pi33 = -Pi11 / 2, off-diagonals zero.
std::array<double, 6> complete_stress(double pi11) noexcept;

/// Max |v_s'(xi_i) - f(v_s(xi_i))| with v_s' from five-point finite
/// differences on the (non-uniform) table grid.
double ode_residual(const ProfileTable& profile);

/// Solves -tau sigma_* X' + X = c u1_s' independently for c = 4mu/3 and
/// c = lambda with decay at +infinity (exponential integrator over the
/// table grid) and returns the max deviation from the stored pi11_s, pi2_s.
double split_identity_residual(const ProfileTable& profile);

struct ProfileCertificate {
  bool v_increasing = false;
  bool u1_decreasing = false;
  bool within_end_states = false;
  bool tails_converged = false;
  bool rates_positive = false;
  double rate_minus = 0.0;  // fitted from log|v_s - v_minus| on the outer left quarter
  double rate_plus = 0.0;
  double rate_minus_over_delta = 0.0;
  double rate_plus_over_delta = 0.0;
  std::size_t fit_points_minus = 0;
  std::size_t fit_points_plus = 0;
  double max_stress_over_slope = 0.0;  // max |pi11_s| / v_s'
  bool stress_bound_finite = false;
  double tensor_completion_residual = 0.0;
  double ode_residual = 0.0;
  double split_residual = 0.0;

  bool all_ok() const noexcept {
    return v_increasing && u1_decreasing && within_end_states && tails_converged &&
           rates_positive && stress_bound_finite;
  }
};

ProfileCertificate validate_profile(const ProfileTable& profile);

}  // namespace relaxshock
