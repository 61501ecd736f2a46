#include "relaxshock/shift_weight.hpp"

#include <cmath>
#include <sstream>

#include "relaxshock/errors.hpp"
#include "relaxshock/parallel.hpp"

namespace relaxshock {

double shift_gain(const ShockData& shock, const GasModel& model) {
  const double g = model.gamma;
  const double sm = std::sqrt(-pressure_derivative(shock.v_minus, model));
  return 9.0 * (g + 1.0) * sm * sm * sm * shock.v_minus * shock.v_minus /
         (16.0 * g * pressure(shock.v_minus, model));
}

ShiftState make_shift_state(const ProfileTable& profile, std::optional<double> nu) {
  const ShockData& s = profile.shock;
  const GasModel& m = profile.model;
  ShiftState st;
  st.profile = &profile;
  const double upper = std::sqrt(s.delta);
  if (nu) {
    if (!(*nu > s.delta && *nu <= upper * (1.0 + 1e-12))) {
      std::ostringstream msg;
      msg << "weight amplitude nu=" << *nu << " must satisfy delta=" << s.delta
          << " < nu <= sqrt(delta)=" << upper;
      throw ConfigError(msg.str());
    }
    st.nu = *nu;
  } else {
    st.nu = upper;
  }
  st.sigma_minus = std::sqrt(-pressure_derivative(s.v_minus, m));
  st.alpha_minus = (m.gamma + 1.0) / (2.0 * m.gamma * st.sigma_minus * pressure(s.v_minus, m));
  st.M = shift_gain(s, m);
  return st;
}

double weight(double xi1, const ShiftState& state) {
  const ProfileTable& p = *state.profile;
  const double v = eval_profile(p, xi1).v;
  return 1.0 + state.nu * (pressure(p.shock.v_minus, p.model) - pressure(v, p.model)) /
                   p.shock.delta;
}

double weight_slope(double xi1, const ShiftState& state) {
  const ProfileTable& p = *state.profile;
  const double v = eval_profile(p, xi1).v;
  const double dv = eval_profile_slope(p, xi1);
  return -state.nu / p.shock.delta * pressure_derivative(v, p.model) * dv;
}

ShiftedProfile sample_shifted_profile(const Grid& grid, const ShiftState& state) {
  const ProfileTable& p = *state.profile;
  const std::size_t n = grid.n1;
  ShiftedProfile s;
  s.v.resize(n);
  s.dv.resize(n);
  s.u1.resize(n);
  s.pi11.resize(n);
  s.pi2.resize(n);
  s.a.resize(n);
  s.da.resize(n);
  const double p_minus = pressure(p.shock.v_minus, p.model);
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = grid.xi1(static_cast<std::ptrdiff_t>(i)) - state.X;
    const ProfileSample ps = eval_profile(p, xi);
    s.v[i] = ps.v;
    s.u1[i] = ps.u1;
    s.pi11[i] = ps.pi11;
    s.pi2[i] = ps.pi2;
    s.dv[i] = eval_profile_slope(p, xi);
    s.a[i] = 1.0 + state.nu * (p_minus - pressure(ps.v, p.model)) / p.shock.delta;
    s.da[i] = -state.nu / p.shock.delta * pressure_derivative(ps.v, p.model) * s.dv[i];
  }
  return s;
}

ShiftIntegrals shift_integrals(const FieldState& fields, const ShiftState& state) {
  const Grid& g = fields.grid;
  const ProfileTable& p = *state.profile;
  const ShiftedProfile sp = sample_shifted_profile(g, state);
  const double sigma_star = p.shock.sigma_star;
  const double area = g.dx2() * g.dx3();

  std::vector<double> t1(g.n1), t2(g.n1);
  for (std::size_t i = 0; i < g.n1; ++i) {
    const double vs = sp.v[i];
    const double ps = pressure(vs, p.model);
    const double du1s = -sigma_star * sp.dv[i];
    const double dps = pressure_derivative(vs, p.model) * sp.dv[i];
    double r1 = 0.0, r2 = 0.0;
    for (std::size_t k = 0; k < g.n3; ++k) {
      for (std::size_t j = 0; j < g.n2; ++j) {
        const double v = fields.f[V][g.index(static_cast<std::ptrdiff_t>(i), j, k)];
        const double rho = 1.0 / v;
        r1 += rho * du1s * (pressure(v, p.model) - ps);
        r2 += rho * dps * (v - vs);
      }
    }
    const double w = sp.a[i] * xi1_weight(g, i) * area;
    t1[i] = w * r1 / sigma_star;
    t2[i] = w * r2;
  }
  return {tree_sum(t1), tree_sum(t2)};
}

double shift_rate(const FieldState& fields, const ShiftState& state) {
  const ShiftIntegrals in = shift_integrals(fields, state);
  return -(state.M / state.profile->shock.delta) * (in.I1 - in.I2);
}

void advance_shift(ShiftState& state, double xdot, double dt) {
  state.X += dt * xdot;
  state.Xdot = xdot;
  state.max_abs_xdot = std::max(state.max_abs_xdot, std::abs(xdot));
}

}  // namespace relaxshock
