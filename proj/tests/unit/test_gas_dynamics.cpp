#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "relaxshock/errors.hpp"
#include "relaxshock/gas_dynamics.hpp"

using namespace relaxshock;

namespace {

GasModel default_model() { return GasModel{5.0 / 3.0, 1.0, 1.0, 0.01}; }

}  // namespace

TEST_CASE("pressure law") {
  GasModel m = default_model();
  for (double g : {1.1, 1.4, 5.0 / 3.0, 3.0}) {
    m.gamma = g;
    CHECK(pressure(1.0, m) == doctest::Approx(1.0).epsilon(1e-15));
  }
  m.gamma = 2.0;
  CHECK(pressure(2.0, m) == doctest::Approx(0.25).epsilon(1e-15));
  m.gamma = 5.0 / 3.0;
  CHECK(pressure_derivative(1.0, m) == doctest::Approx(-5.0 / 3.0).epsilon(1e-15));
  // centered difference oracle
  for (double v : {0.5, 0.9, 1.3, 2.7}) {
    const double h = 1e-5;
    const double fd = (pressure(v + h, m) - pressure(v - h, m)) / (2 * h);
    CHECK(pressure_derivative(v, m) == doctest::Approx(fd).epsilon(1e-8));
  }
}

TEST_CASE("model validation rejects bad parameters") {
  GasModel m = default_model();
  m.gamma = 1.0;
  CHECK_THROWS_AS(m.validate(), ConfigError);
  m = default_model();
  m.mu = -1.0;
  CHECK_THROWS_AS(m.validate(), ConfigError);
  m = default_model();
  m.tau = -0.1;
  CHECK_THROWS_AS(m.validate(), ConfigError);
}

TEST_CASE("jump conditions hold for the reference shock") {
  const GasModel m = default_model();
  const ShockData s = make_shock(1.0, 0.0, 1.2, m);
  // direct substitution into the mass and momentum jumps in (rho, rho u1) form
  const double rm = 1.0 / s.v_minus, rp = 1.0 / s.v_plus;
  const double mass = -s.sigma * (rp - rm) + (rp * s.u1_plus - rm * s.u1_minus);
  const double mom = -s.sigma * (rp * s.u1_plus - rm * s.u1_minus) +
                     (rp * s.u1_plus * s.u1_plus + pressure(s.v_plus, m)) -
                     (rm * s.u1_minus * s.u1_minus + pressure(s.v_minus, m));
  CHECK(std::abs(mass) < 1e-12);
  CHECK(std::abs(mom) < 1e-12);
  const RankineHugoniotResiduals r = rankine_hugoniot_residuals(s, m);
  CHECK(r.mass < 1e-12);
  CHECK(r.momentum < 1e-12);
  CHECK(lax_condition(s));
  CHECK(s.sigma_star * s.sigma_star ==
        doctest::Approx((pressure(1.0, m) - pressure(1.2, m)) / 0.2).epsilon(1e-14));
  CHECK(s.delta == doctest::Approx(pressure(1.0, m) - pressure(1.2, m)).epsilon(1e-15));
}

TEST_CASE("h vanishes at the end states and is positive between them") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> gam(1.1, 3.0), vp(1.01, 3.0), u(-2.0, 2.0);
  for (int n = 0; n < 40; ++n) {
    GasModel m = default_model();
    m.gamma = gam(rng);
    const ShockData s = make_shock(1.0, u(rng), vp(rng), m);
    const double scale = s.sigma_star * s.sigma_star * s.delta_v() + s.delta;
    CHECK(std::abs(hugoniot_h(s.v_minus, s, m)) <= 1e-12 * scale);
    CHECK(std::abs(hugoniot_h(s.v_plus, s, m)) <= 1e-12 * scale);
    for (int k = 1; k < 200; ++k) {
      const double z = s.v_minus + s.delta_v() * k / 200.0;
      CHECK(hugoniot_h(z, s, m) > 0.0);
    }
    // idempotence of the construction
    const ShockData again = make_shock(s.v_minus, s.u1_minus, s.v_plus, m);
    CHECK(again.sigma == s.sigma);
    CHECK(again.sigma_star == s.sigma_star);
    CHECK(again.u1_plus == s.u1_plus);
  }
}

TEST_CASE("weak shock limit approaches the sound speed") {
  const GasModel m = default_model();
  const double sm = std::sqrt(-pressure_derivative(1.0, m));
  double prev = std::numeric_limits<double>::infinity();
  for (double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
    const ShockData s = make_shock(1.0, 0.0, 1.0 + eps, m);
    const double err = std::abs(s.sigma_star - sm);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("non 2-shock inputs are rejected") {
  const GasModel m = default_model();
  CHECK_THROWS_AS(make_shock(1.0, 0.0, 0.9, m), AdmissibilityError);
  CHECK_THROWS_AS(make_shock(1.0, 0.0, 1.0, m), AdmissibilityError);
  CHECK_THROWS_AS(make_shock(-1.0, 0.0, 1.2, m), ConfigError);
}

TEST_CASE("tau bound against a brute force minimum") {
  const GasModel m = default_model();
  const ShockData s = make_shock(1.0, 0.0, 1.5, m);
  const TauBound b = tau_admissible_max(s, m);
  double brute = std::numeric_limits<double>::infinity();
  const int n = 1000000;
  for (int k = 0; k <= n; ++k) {
    const double z = s.v_minus + s.delta_v() * k / n;
    const double q = m.viscosity_sum() /
                     (2.0 * std::abs(s.sigma_star * s.sigma_star + pressure_derivative(z, m)));
    brute = std::min(brute, q);
  }
  brute = std::min(brute, 1.0);
  CHECK(b.tau_max == doctest::Approx(brute).epsilon(1e-6));
  CHECK(b.tau_max <= 1.0);

  // denominator positivity at the bound
  GasModel at = m;
  at.tau = b.tau_max;
  const double floor = 0.5 * s.sigma_star * m.viscosity_sum();
  for (int k = 0; k <= 2000; ++k) {
    const double z = s.v_minus + s.delta_v() * k / 2000.0;
    const double den = s.sigma_star * m.viscosity_sum() +
                       at.tau * s.sigma_star * hugoniot_h_derivative(z, s, m);
    CHECK(den >= floor * (1.0 - 1e-9));
  }

  // weak shocks hit the cap
  const ShockData weak = make_shock(1.0, 0.0, 1.0 + 1e-6, m);
  CHECK(tau_admissible_max(weak, m).tau_max == 1.0);
}

TEST_CASE("h derivative matches finite differences") {
  const GasModel m = default_model();
  const ShockData s = make_shock(1.0, 0.0, 1.3, m);
  for (double z : {1.0, 1.07, 1.15, 1.3}) {
    const double e = 1e-6;
    const double fd = (hugoniot_h(z + e, s, m) - hugoniot_h(z - e, s, m)) / (2 * e);
    CHECK(hugoniot_h_derivative(z, s, m) == doctest::Approx(fd).epsilon(1e-7));
  }
}

TEST_CASE("strength inversion") {
  const GasModel m = default_model();
  const double vp = v_plus_for_strength(1.0, 0.2, m);
  CHECK(pressure(1.0, m) - pressure(vp, m) == doctest::Approx(0.2).epsilon(1e-13));
}
