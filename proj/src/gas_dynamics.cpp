#include "relaxshock/gas_dynamics.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "relaxshock/errors.hpp"

namespace relaxshock {

void GasModel::validate() const {
  std::ostringstream msg;
  if (!(gamma > 1.0)) msg << "gamma must exceed 1 (got " << gamma << "); ";
  if (!(mu > 0.0)) msg << "mu must be positive (got " << mu << "); ";
  if (!(lambda > 0.0)) msg << "lambda must be positive (got " << lambda << "); ";
  if (!(tau >= 0.0)) msg << "tau must be non-negative (got " << tau << "); ";
  if (!msg.str().empty()) throw ConfigError(msg.str());
}

double pressure(double v, const GasModel& model) {
  if (!(v > 0.0)) throw std::domain_error("pressure: specific volume must be positive");
  return std::pow(v, -model.gamma);
}

double pressure_derivative(double v, const GasModel& model) {
  if (!(v > 0.0)) throw std::domain_error("pressure_derivative: specific volume must be positive");
  return -model.gamma * std::pow(v, -model.gamma - 1.0);
}

ShockData make_shock(double v_minus, double u1_minus, double v_plus, const GasModel& model) {
  model.validate();
  if (!(v_minus > 0.0)) throw AdmissibilityError("v_minus must be positive");
  if (!(v_plus > v_minus)) {
    std::ostringstream msg;
    msg << "not a 2-shock: need v_plus > v_minus (got v_minus=" << v_minus
        << ", v_plus=" << v_plus << ")";
    throw AdmissibilityError(msg.str());
  }

  ShockData s;
  s.v_minus = v_minus;
  s.v_plus = v_plus;
  s.u1_minus = u1_minus;
  const double p_minus = pressure(v_minus, model);
  const double p_plus = pressure(v_plus, model);
  s.delta = p_minus - p_plus;
  s.sigma_star = std::sqrt(s.delta / (v_plus - v_minus));
  s.u1_plus = u1_minus - s.sigma_star * (v_plus - v_minus);
  s.sigma = u1_minus + s.sigma_star * v_minus;

  if (!(s.u1_plus < s.u1_minus) || !(s.delta > 0.0)) {
    throw AdmissibilityError("make_shock: constructed states violate the Lax ordering");
  }
  return s;
}

double hugoniot_h(double v, const ShockData& shock, const GasModel& model) {
  return shock.sigma_star * shock.sigma_star * (shock.v_minus - v) +
         (pressure(shock.v_minus, model) - pressure(v, model));
}

double hugoniot_h_derivative(double v, const ShockData& shock, const GasModel& model) {
  return -shock.sigma_star * shock.sigma_star - pressure_derivative(v, model);
}

RankineHugoniotResiduals rankine_hugoniot_residuals(const ShockData& shock, const GasModel& model) {
  const double rho_m = 1.0 / shock.v_minus;
  const double rho_p = 1.0 / shock.v_plus;
  const double um = shock.u1_minus;
  const double up = shock.u1_plus;
  const double sigma = shock.sigma;
  const double p_m = pressure(shock.v_minus, model);
  const double p_p = pressure(shock.v_plus, model);

  const double mass = -sigma * (rho_p - rho_m) + (rho_p * up - rho_m * um);
  const double momentum =
      -sigma * (rho_p * up - rho_m * um) + (rho_p * up * up - rho_m * um * um) + (p_p - p_m);

  const double scale = std::max({1.0, rho_m, rho_p, std::abs(um), std::abs(up), std::abs(sigma),
                                 rho_m * um * um, p_m});
  return {std::abs(mass) / scale, std::abs(momentum) / scale};
}

bool lax_condition(const ShockData& shock) noexcept {
  return shock.v_minus < shock.v_plus && shock.u1_minus > shock.u1_plus;
}

TauBound tau_admissible_max(const ShockData& shock, const GasModel& model, int samples) {
  TauBound out{1.0, shock.v_minus};
  const double width = shock.v_plus - shock.v_minus;
  if (!(width > 0.0) || samples < 1) return out;

  const double numerator = model.viscosity_sum();
  const double s2 = shock.sigma_star * shock.sigma_star;
  double best = std::numeric_limits<double>::infinity();
  double arg = shock.v_minus;

  auto visit = [&](double z) {
    const double denom = 2.0 * std::abs(s2 + pressure_derivative(z, model));
    if (denom == 0.0) return;
    const double q = numerator / denom;
    if (q < best) {
      best = q;
      arg = z;
    }
  };

  // Endpoints plus `samples` interior points.
  visit(shock.v_minus);
  for (int n = 1; n <= samples; ++n) {
    visit(shock.v_minus + width * static_cast<double>(n) / static_cast<double>(samples + 1));
  }
  visit(shock.v_plus);

  out.tau_max = std::min(best, 1.0);
  out.z_min = arg;
  return out;
}

double v_plus_for_strength(double v_minus, double delta, const GasModel& model) {
  const double p_plus = pressure(v_minus, model) - delta;
  if (!(p_plus > 0.0)) throw ConfigError("shock strength exceeds p(v_minus)");
  return std::pow(p_plus, -1.0 / model.gamma);
}

}  // namespace relaxshock
