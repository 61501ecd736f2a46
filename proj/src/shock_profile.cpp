#include "relaxshock/shock_profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "relaxshock/errors.hpp"
#include "relaxshock/finite_difference.hpp"

namespace relaxshock {

namespace {

double denominator(double v, const ShockData& shock, const GasModel& model) {
  return shock.sigma_star * model.viscosity_sum() +
         model.tau * shock.sigma_star * hugoniot_h_derivative(v, shock, model);
}

// Dormand-Prince 5(4) tableau.
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr double kErr[7] = {71.0 / 57600,      0.0,           -71.0 / 16695, 71.0 / 1920,
                            -17253.0 / 339200, 22.0 / 525,    -1.0 / 40};

struct StepResult {
  double y;
  double err;
};

template <class F>
StepResult dopri_step(const F& f, double y, double h) {
  double k[7];
  k[0] = f(y);
  for (int s = 1; s < 7; ++s) {
    double acc = 0.0;
    for (int j = 0; j < s; ++j) acc += kA[s][j] * k[j];
    k[s] = f(y + h * acc);
  }
  // The FSAL row doubles as the fifth-order weights.
  double y5 = y;
  double err = 0.0;
  for (int j = 0; j < 7; ++j) {
    if (j < 6) y5 += h * kA[6][j] * k[j];
    err += kErr[j] * k[j];
  }
  return {y5, std::abs(h * err)};
}

// Integrates v' = dir * f(v) from the pinning point until v is within
// `stop_gap` of `target`. Returns the visited v values (excluding the start)
// and their distances from the pin.
void integrate_branch(const ShockData& shock, const GasModel& model, const ProfileOptions& opt,
                      double dir, double target, std::vector<double>& s_out,
                      std::vector<double>& v_out) {
  const double floor_denominator = shock.sigma_star * model.viscosity_sum() / 4.0;
  auto rhs = [&](double v) {
    const double den = denominator(v, shock, model);
    if (den < floor_denominator) {
      std::ostringstream msg;
      msg << "profile ODE denominator " << den << " fell below " << floor_denominator
          << " at v=" << v << " (tau too large for this shock)";
      throw StiffnessError(msg.str());
    }
    return dir * hugoniot_h(v, shock, model) / den;
  };

  const double width = characteristic_width(shock, model);
  const double h_max = opt.max_step * width;
  const double h_floor = 1e-12 * width;
  const double stop_gap = opt.tail_eps * shock.delta_v();
  const std::size_t max_steps = 10'000'000;

  double v = 0.5 * (shock.v_minus + shock.v_plus);
  double s = 0.0;
  double h = opt.fixed_step > 0.0 ? opt.fixed_step : 0.1 * h_max;

  for (std::size_t n = 0; n < max_steps; ++n) {
    if (std::abs(v - target) < stop_gap) return;
    const StepResult r = dopri_step(rhs, v, h);
    if (opt.fixed_step > 0.0 || r.err <= opt.tol || h <= h_floor) {
      v = r.y;
      s += h;
      s_out.push_back(s);
      v_out.push_back(v);
    }
    if (opt.fixed_step > 0.0) continue;
    const double factor =
        r.err > 0.0 ? std::clamp(0.9 * std::pow(opt.tol / r.err, 0.2), 0.2, 5.0) : 5.0;
    h = std::clamp(h * factor, h_floor, h_max);
  }
  throw StiffnessError("profile integration did not reach the far-field tolerance");
}

}  // namespace

double characteristic_width(const ShockData& shock, const GasModel& model) {
  return model.viscosity_sum() / (shock.sigma_star * shock.delta);
}

double profile_rhs(double v, const ShockData& shock, const GasModel& model) {
  return hugoniot_h(v, shock, model) / denominator(v, shock, model);
}

double profile_u1(double v, const ShockData& shock) {
  return shock.u1_minus - shock.sigma_star * (v - shock.v_minus);
}

double profile_stress_sum(double v, const ShockData& shock, const GasModel& model) {
  // -sigma_*(u1 - u1_-) + p(v) - p(v_-) = -h(v)
  return -hugoniot_h(v, shock, model);
}

double profile_pi11(double v, const ShockData& shock, const GasModel& model) {
  const double shear = 4.0 * model.mu / 3.0;
  return shear / model.viscosity_sum() * profile_stress_sum(v, shock, model);
}

double profile_pi2(double v, const ShockData& shock, const GasModel& model) {
  return model.lambda / model.viscosity_sum() * profile_stress_sum(v, shock, model);
}

ProfileTable solve_profile(const ShockData& shock, const GasModel& model,
                           const ProfileOptions& options) {
  model.validate();
  if (!(shock.v_plus > shock.v_minus) || !(shock.delta > 0.0) || !(shock.sigma_star > 0.0)) {
    throw AdmissibilityError("degenerate shock: zero strength has no profile");
  }
  if (!(options.tol > 0.0)) throw ConfigError("profile tolerance must be positive");
  if (!(options.tail_eps > 0.0 && options.tail_eps < 0.1)) {
    throw ConfigError("tail_eps must lie in (0, 0.1)");
  }
  const TauBound bound = tau_admissible_max(shock, model);
  if (model.tau > bound.tau_max) {
    std::ostringstream msg;
    msg << "tau=" << model.tau << " exceeds the admissible bound " << bound.tau_max
        << " (attained at z=" << bound.z_min << ")";
    throw AdmissibilityError(msg.str());
  }

  std::vector<double> s_left, v_left, s_right, v_right;
  integrate_branch(shock, model, options, -1.0, shock.v_minus, s_left, v_left);
  integrate_branch(shock, model, options, +1.0, shock.v_plus, s_right, v_right);

  ProfileTable t;
  t.shock = shock;
  t.model = model;
  t.tail_eps = options.tail_eps;
  const std::size_t n = s_left.size() + 1 + s_right.size();
  t.xi.reserve(n);
  t.v_s.reserve(n);
  for (std::size_t k = s_left.size(); k-- > 0;) {
    t.xi.push_back(-s_left[k]);
    t.v_s.push_back(v_left[k]);
  }
  t.pin_index = t.xi.size();
  t.xi.push_back(0.0);
  t.v_s.push_back(0.5 * (shock.v_minus + shock.v_plus));
  for (std::size_t k = 0; k < s_right.size(); ++k) {
    t.xi.push_back(s_right[k]);
    t.v_s.push_back(v_right[k]);
  }

  t.dv_s.resize(n);
  t.u1_s.resize(n);
  t.pi11_s.resize(n);
  t.pi2_s.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = t.v_s[i];
    t.dv_s[i] = profile_rhs(v, shock, model);
    t.u1_s[i] = profile_u1(v, shock);
    t.pi11_s[i] = profile_pi11(v, shock, model);
    t.pi2_s[i] = profile_pi2(v, shock, model);
  }

  t.rate_minus = hugoniot_h_derivative(shock.v_minus, shock, model) /
                 denominator(shock.v_minus, shock, model);
  t.rate_plus = -hugoniot_h_derivative(shock.v_plus, shock, model) /
                denominator(shock.v_plus, shock, model);
  return t;
}

namespace {

double hermite_v(const ProfileTable& p, double xi1, double* slope) {
  const auto& x = p.xi;
  const auto it = std::upper_bound(x.begin(), x.end(), xi1);
  std::size_t i = static_cast<std::size_t>(it - x.begin());
  i = std::clamp<std::size_t>(i, 1, x.size() - 1) - 1;

  const double h = x[i + 1] - x[i];
  const double y0 = p.v_s[i];
  const double y1 = p.v_s[i + 1];
  const double secant = (y1 - y0) / h;
  double d0 = p.dv_s[i];
  double d1 = p.dv_s[i + 1];
  if (secant > 0.0) {
    // Fritsch-Carlson: keep (alpha, beta) inside the radius-3 circle.
    const double a = d0 / secant;
    const double b = d1 / secant;
    const double r2 = a * a + b * b;
    if (r2 > 9.0) {
      const double scale = 3.0 / std::sqrt(r2);
      d0 = scale * a * secant;
      d1 = scale * b * secant;
    }
  } else {
    d0 = 0.0;
    d1 = 0.0;
  }

  const double t = (xi1 - x[i]) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  if (slope) {
    const double g00 = (6 * t2 - 6 * t) / h;
    const double g10 = 3 * t2 - 4 * t + 1;
    const double g01 = (-6 * t2 + 6 * t) / h;
    const double g11 = 3 * t2 - 2 * t;
    *slope = g00 * y0 + g10 * d0 + g01 * y1 + g11 * d1;
  }
  return h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1;
}

double profile_v(const ProfileTable& p, double xi1, double* slope) {
  const ShockData& s = p.shock;
  if (xi1 <= p.xi.front()) {
    const double gap = (p.v_s.front() - s.v_minus) * std::exp(p.rate_minus * (xi1 - p.xi.front()));
    if (slope) *slope = p.rate_minus * gap;
    return s.v_minus + gap;
  }
  if (xi1 >= p.xi.back()) {
    const double gap = (s.v_plus - p.v_s.back()) * std::exp(-p.rate_plus * (xi1 - p.xi.back()));
    if (slope) *slope = p.rate_plus * gap;
    return s.v_plus - gap;
  }
  return hermite_v(p, xi1, slope);
}

}  // namespace

ProfileSample eval_profile(const ProfileTable& profile, double xi1) {
  const double v = profile_v(profile, xi1, nullptr);
  return {v, profile_u1(v, profile.shock), profile_pi11(v, profile.shock, profile.model),
          profile_pi2(v, profile.shock, profile.model)};
}

double eval_profile_slope(const ProfileTable& profile, double xi1) {
  double slope = 0.0;
  profile_v(profile, xi1, &slope);
  return slope;
}

std::array<double, 6> complete_stress(double pi11) noexcept {
  return {pi11, -0.5 * pi11, -0.5 * pi11, 0.0, 0.0, 0.0};
}

double ode_residual(const ProfileTable& profile) {
  const auto d = fd_derivative(profile.xi, profile.v_s, 5);
  double worst = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    worst = std::max(worst, std::abs(d[i] - profile_rhs(profile.v_s[i], profile.shock,
                                                         profile.model)));
  }
  return worst;
}

namespace {

// (1/kappa) * int_0^delta exp(-s/kappa) s^m ds for m = 0..3.
std::array<double, 4> exp_moments(double delta, double kappa) {
  const double x = delta / kappa;
  std::array<double, 4> out{};
  double kpow = 1.0;
  double fact = 1.0;
  for (int m = 0; m < 4; ++m) {
    if (m > 0) fact *= m;
    double lower_gamma;
    if (x < 1.0) {
      // x^{m+1} e^{-x} sum_n x^n / ((m+1)...(m+1+n))
      double term = 1.0 / (m + 1);
      double sum = term;
      for (int n = 1; n < 40; ++n) {
        term *= x / (m + 1 + n);
        sum += term;
      }
      lower_gamma = std::pow(x, m + 1) * std::exp(-x) * sum;
    } else {
      double partial = 0.0;
      double xp = 1.0;
      double jf = 1.0;
      for (int j = 0; j <= m; ++j) {
        if (j > 0) {
          xp *= x;
          jf *= j;
        }
        partial += xp / jf;
      }
      lower_gamma = fact * (1.0 - std::exp(-x) * partial);
    }
    out[m] = kpow * lower_gamma;
    kpow *= kappa;
  }
  return out;
}

std::vector<double> relaxed_stress_by_quadrature(const ProfileTable& p, double coefficient) {
  const std::size_t n = p.size();
  const auto du1 = fd_derivative(p.xi, p.u1_s, 7);
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = coefficient * du1[i];
  const double kappa = p.model.tau * p.shock.sigma_star;
  if (kappa == 0.0) return g;

  const auto dg = fd_derivative(p.xi, g, 7);
  std::vector<double> out(n);
  out[n - 1] = g[n - 1] + kappa * dg[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) {
    const double h = p.xi[i + 1] - p.xi[i];
    const double c0 = g[i];
    const double c1 = dg[i];
    const double c2 = (3.0 * (g[i + 1] - g[i]) / h - 2.0 * dg[i] - dg[i + 1]) / h;
    const double c3 = (dg[i] + dg[i + 1] - 2.0 * (g[i + 1] - g[i]) / h) / (h * h);
    const auto m = exp_moments(h, kappa);
    out[i] = std::exp(-h / kappa) * out[i + 1] + c0 * m[0] + c1 * m[1] + c2 * m[2] + c3 * m[3];
  }
  return out;
}

}  // namespace

double split_identity_residual(const ProfileTable& profile) {
  const auto pi11 = relaxed_stress_by_quadrature(profile, 4.0 * profile.model.mu / 3.0);
  const auto pi2 = relaxed_stress_by_quadrature(profile, profile.model.lambda);
  double worst = 0.0;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    worst = std::max(worst, std::abs(pi11[i] - profile.pi11_s[i]));
    worst = std::max(worst, std::abs(pi2[i] - profile.pi2_s[i]));
  }
  return worst;
}

namespace {

struct TailFit {
  double slope = 0.0;
  std::size_t points = 0;
};

TailFit fit_log_tail(const std::vector<double>& x, const std::vector<double>& gap) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (gap[i] >= 1e-13) {
      xs.push_back(x[i]);
      ys.push_back(std::log(gap[i]));
    }
  }
  TailFit fit;
  fit.points = xs.size();
  if (xs.size() < 2) return fit;
  const double nx = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / nx;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / nx;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  return fit;
}

}  // namespace

ProfileCertificate validate_profile(const ProfileTable& profile) {
  ProfileCertificate c;
  const ShockData& s = profile.shock;
  const std::size_t n = profile.size();
  if (n < 2) return c;

  c.v_increasing = true;
  c.u1_decreasing = true;
  for (std::size_t i = 1; i < n; ++i) {
    if (!(profile.v_s[i] > profile.v_s[i - 1])) c.v_increasing = false;
    if (!(profile.u1_s[i] < profile.u1_s[i - 1])) c.u1_decreasing = false;
  }
  c.within_end_states = std::all_of(profile.v_s.begin(), profile.v_s.end(), [&](double v) {
    return v > s.v_minus && v < s.v_plus;
  });
  const double gap = profile.tail_eps * s.delta_v();
  c.tails_converged = std::abs(profile.v_s.front() - s.v_minus) < gap &&
                      std::abs(profile.v_s.back() - s.v_plus) < gap;

  // Outer quarter of each tail, measured in xi.
  std::vector<double> xl, gl, xr, gr;
  const double left_cut = 0.75 * profile.xi.front();
  const double right_cut = 0.75 * profile.xi.back();
  for (std::size_t i = 0; i < n; ++i) {
    const double x = profile.xi[i];
    if (x <= left_cut) {
      xl.push_back(x);
      gl.push_back(std::abs(profile.v_s[i] - s.v_minus));
    }
    if (x >= right_cut) {
      xr.push_back(x);
      gr.push_back(std::abs(s.v_plus - profile.v_s[i]));
    }
  }
  const TailFit left = fit_log_tail(xl, gl);
  const TailFit right = fit_log_tail(xr, gr);
  c.rate_minus = left.slope;
  c.rate_plus = -right.slope;
  c.fit_points_minus = left.points;
  c.fit_points_plus = right.points;
  c.rates_positive = c.rate_minus > 0.0 && c.rate_plus > 0.0 && left.points >= 2 &&
                     right.points >= 2;
  c.rate_minus_over_delta = c.rate_minus / s.delta;
  c.rate_plus_over_delta = c.rate_plus / s.delta;

  c.stress_bound_finite = true;
  for (std::size_t i = 0; i < n; ++i) {
    const double slope = profile.dv_s[i];
    if (slope > 0.0) {
      const double q = std::abs(profile.pi11_s[i]) / slope;
      if (!std::isfinite(q)) c.stress_bound_finite = false;
      c.max_stress_over_slope = std::max(c.max_stress_over_slope, q);
    } else {
      c.stress_bound_finite = false;
    }
    const auto t = complete_stress(profile.pi11_s[i]);
    const double r = std::abs(t[0] + t[1] + t[2]) + std::abs(t[1] - t[2]) +
                     std::abs(t[1] + 0.5 * t[0]) + std::abs(t[3]) + std::abs(t[4]) +
                     std::abs(t[5]);
    c.tensor_completion_residual = std::max(c.tensor_completion_residual, r);
  }
  c.ode_residual = ode_residual(profile);
  c.split_residual = split_identity_residual(profile);
  return c;
}

}  // namespace relaxshock
