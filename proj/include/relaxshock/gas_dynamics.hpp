#pragma once

#include <cmath>

namespace relaxshock {

/// Physical parameters of the relaxed isentropic gas. Pressure is
/// normalized as p(v) = v^(-gamma).
struct GasModel {
  double gamma = 5.0 / 3.0;
  double mu = 1.0;      // shear viscosity
  double lambda = 1.0;  // bulk viscosity
  double tau = 0.01;    // relaxation time

  /// Longitudinal viscosity 4*mu/3 + lambda.
  double viscosity_sum() const noexcept { return 4.0 * mu / 3.0 + lambda; }

  /// Throws ConfigError when a parameter is out of range.
  void validate() const;
};

double pressure(double v, const GasModel& model);
double pressure_derivative(double v, const GasModel& model);

/// End states and speeds of a 2-shock. Built by make_shock.
struct ShockData {
  double v_minus = 1.0;
  double v_plus = 1.0;
  double u1_minus = 0.0;
  double u1_plus = 0.0;
  double sigma = 0.0;       // Eulerian shock speed
  double sigma_star = 0.0;  // mass flux through the shock
  double delta = 0.0;       // p(v_minus) - p(v_plus)

  double delta_v() const noexcept { return v_plus - v_minus; }
};

ShockData make_shock(double v_minus, double u1_minus, double v_plus, const GasModel& model);

/// h(v) = sigma_*^2 (v_- - v) + p(v_-) - p(v); vanishes at both end states.
double hugoniot_h(double v, const ShockData& shock, const GasModel& model);
double hugoniot_h_derivative(double v, const ShockData& shock, const GasModel& model);

struct RankineHugoniotResiduals {
  double mass = 0.0;
  double momentum = 0.0;
};

/// Jump-condition residuals in conservative (rho, rho*u1) form, scaled by
/// max(1, largest state magnitude).
RankineHugoniotResiduals rankine_hugoniot_residuals(const ShockData& shock, const GasModel& model);

/// True when v_minus < v_plus and u1_minus > u1_plus.
bool lax_condition(const ShockData& shock) noexcept;

struct TauBound {
  double tau_max = 1.0;
  double z_min = 0.0;  // minimizer of the quotient over [v_minus, v_plus]
};

/// Largest relaxation time for which the traveling-wave denominator stays
/// at least half its tau = 0 value:
///   min( min_z (4mu/3 + lambda) / (2 |sigma_*^2 + p'(z)|), 1 ).
TauBound tau_admissible_max(const ShockData& shock, const GasModel& model, int samples = 4096);

/// Right end state with p(v_plus) = p(v_minus) - delta.
double v_plus_for_strength(double v_minus, double delta, const GasModel& model);

}  // namespace relaxshock
