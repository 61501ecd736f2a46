#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "relaxshock/diagnostics.hpp"
#include "relaxshock/errors.hpp"
#include "relaxshock/relax_solver.hpp"

using namespace relaxshock;

namespace {

GasModel default_model() { return GasModel{5.0 / 3.0, 1.0, 1.0, 0.01}; }

Background constant_background(const Grid& g, double v, double u1) {
  Background bg;
  for (auto& f : bg.f) f.assign(g.row(), 0.0);
  bg.f[V].assign(g.row(), v);
  bg.f[U1].assign(g.row(), u1);
  return bg;
}

ShockData resting_frame() {
  ShockData s;
  s.sigma = 0.0;
  return s;
}

struct Setup {
  GasModel model = default_model();
  ShockData shock = make_shock(1.0, 0.0, 1.2, model);
  ProfileTable profile = solve_profile(shock, model);
};

const Setup& setup() {
  static const Setup s;
  return s;
}

// Quasilinear matrix A(n) of the frozen principal part, w_t + A dw/dn = 0,
// for w = (v, u1, u2, u3, pi11, pi22, pi33, pi12, pi13, pi23, pi2).
Eigen::MatrixXd frozen_jacobian(const GasModel& m, double sigma, const double* w,
                                const double n[3]) {
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(11, 11);
  const double v = w[0];
  const double a = (w[1] - sigma) * n[0] + w[2] * n[1] + w[3] * n[2];
  for (int r = 0; r < 11; ++r) A(r, r) = a;
  const double dp = -m.gamma * std::pow(v, -m.gamma - 1.0);
  // index of the symmetric entry (i, j) among the six stored stress slots
  const int sym[3][3] = {{4, 7, 8}, {7, 5, 9}, {8, 9, 6}};
  for (int i = 0; i < 3; ++i) {
    A(0, 1 + i) = -v * n[i];
    A(1 + i, 0) = v * dp * n[i];
    for (int j = 0; j < 3; ++j) A(1 + i, sym[i][j]) -= v * n[j];
    A(1 + i, 10) = -v * n[i];
  }
  const double c = v / m.tau;
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      const int r = sym[i][j];
      // d/dn of mu (du_i/dx_j + du_j/dx_i) - (2/3) mu div u delta_ij
      A(r, 1 + i) -= c * m.mu * n[j];
      A(r, 1 + j) -= c * m.mu * n[i];
      if (i == j) {
        for (int k = 0; k < 3; ++k) A(r, 1 + k) += c * m.mu * 2.0 / 3.0 * n[k];
      }
    }
  }
  for (int k = 0; k < 3; ++k) A(10, 1 + k) = -c * m.lambda * n[k];
  return A;
}

}  // namespace

TEST_CASE("speed bound plug-in value") {
  GasModel m{2.0, 0.75, 0.75, 1.0};
  Grid g;
  g.n1 = 32;
  g.L = 1.0;
  const RelaxSolver solver(m, resting_frame(), g, constant_background(g, 1.0, 0.0));
  const FieldState s = constant_state(g, 1.0, 0.0);
  CHECK(solver.max_speed(s) == doctest::Approx(std::sqrt(3.75)).epsilon(1e-15));
}

TEST_CASE("speed bound dominates frozen Jacobian eigenvalues") {
  const GasModel m = default_model();
  Grid g;
  g.n1 = 32;
  g.L = 1.0;
  const double sigma = 0.7;
  ShockData sh;
  sh.sigma = sigma;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> vr(0.5, 2.0), ur(-1.0, 1.0), pr(-0.5, 0.5), nr(-1, 1);
  for (int trial = 0; trial < 100; ++trial) {
    double w[11];
    w[0] = vr(rng);
    for (int q = 1; q < 4; ++q) w[q] = ur(rng);
    for (int q = 4; q < 11; ++q) w[q] = pr(rng);
    FieldState s = constant_state(g, w[0], w[1], w[2], w[3]);
    const RelaxSolver solver(m, sh, g, constant_background(g, w[0], w[1]));
    const double bound = solver.max_speed(s);
    double n[3] = {nr(rng), nr(rng), nr(rng)};
    const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    for (double& x : n) x /= len;
    for (const double* dir : {n, std::array<double, 3>{1, 0, 0}.data()}) {
      const Eigen::EigenSolver<Eigen::MatrixXd> es(frozen_jacobian(m, sigma, w, dir));
      for (int k = 0; k < 11; ++k) {
        const auto lam = es.eigenvalues()[k];
        CHECK(std::abs(lam.imag()) < 1e-8 * bound);
        CHECK(std::abs(lam.real()) <= bound * (1.0 + 1e-12));
      }
    }
  }
}

TEST_CASE("time step responds to tau") {
  const Setup& su = setup();
  Grid g;
  g.L = 40.0;
  g.n1 = 256;
  const FieldState s = init_perturbed_shock(su.profile, g, {});
  GasModel m = su.model;
  const RelaxSolver a(m, su.shock, g, profile_background(su.profile, g));
  m.tau *= 0.5;
  const RelaxSolver b(m, su.shock, g, profile_background(su.profile, g));
  CHECK(b.max_speed(s) > a.max_speed(s));
  CHECK(b.cfl_dt(s) < a.cfl_dt(s));
  m.tau = 0.0;
  const RelaxSolver c(m, su.shock, g, profile_background(su.profile, g));
  CHECK_THROWS_AS(c.cfl_dt(s), ConfigError);
}

TEST_CASE("constant state is a fixed point") {
  const GasModel m = default_model();
  Grid g;
  g.L = 10.0;
  g.n1 = 64;
  g.n2 = 4;
  g.n3 = 4;
  const double v = 1.3, u1 = 0.2;
  const RelaxSolver solver(m, resting_frame(), g, constant_background(g, v, u1));
  FieldState s = constant_state(g, v, u1);
  for (int n = 0; n < 10; ++n) solver.step(s, solver.cfl_dt(s));
  for (std::size_t q = 0; q < kFieldCount; ++q) {
    for (double x : s.f[q]) {
      const double ref = q == V ? v : (q == U1 ? u1 : 0.0);
      CHECK(std::abs(x - ref) <= 1e-14);
    }
  }
}

TEST_CASE("relaxation sub-step is an exact exponential") {
  const GasModel m = default_model();
  Grid g;
  g.L = 10.0;
  g.n1 = 32;
  const double v = 1.25;
  const RelaxSolver solver(m, resting_frame(), g, constant_background(g, v, 0.4));
  FieldState s = constant_state(g, v, 0.4);
  std::fill(s.f[P11].begin(), s.f[P11].end(), 0.3);
  std::fill(s.f[P22].begin(), s.f[P22].end(), -0.1);
  std::fill(s.f[P33].begin(), s.f[P33].end(), -0.2);
  std::fill(s.f[P12].begin(), s.f[P12].end(), 0.05);
  std::fill(s.f[P2].begin(), s.f[P2].end(), 0.07);
  const FieldState s0 = s;
  solver.fill_ghosts(s);
  const double h = 0.003;
  solver.relax(s, h);
  const double decay = std::exp(-h * v / m.tau);
  for (Field q : {P11, P22, P33, P12, P2}) {
    for (std::ptrdiff_t i = 0; i < 32; ++i) {
      CHECK(s.at(q, i) == doctest::Approx(s0.at(q, i) * decay).epsilon(1e-14));
    }
  }
}

TEST_CASE("initial data") {
  const Setup& su = setup();
  Grid g;
  g.L = 40.0;
  g.n1 = 400;
  const FieldState exact = init_perturbed_shock(su.profile, g, {});
  BumpSpec zero;
  zero.amplitude = 0.0;
  const FieldState z = init_perturbed_shock(su.profile, g, {zero});
  for (std::size_t q = 0; q < kFieldCount; ++q) CHECK(z.f[q] == exact.f[q]);
  BumpSpec b;
  b.amplitude = 0.01;
  const FieldState p = init_perturbed_shock(su.profile, g, {b});
  for (std::size_t q = 1; q < kFieldCount; ++q) CHECK(p.f[q] == exact.f[q]);
  CHECK(p.f[V] != exact.f[V]);
  BumpSpec wide = b;
  wide.width = 30.0;
  CHECK_THROWS_AS(init_perturbed_shock(su.profile, g, {wide}), ConfigError);
  BumpSpec deep = b;
  deep.amplitude = -2.0;
  CHECK_THROWS_AS(init_perturbed_shock(su.profile, g, {deep}), ConfigError);
}

TEST_CASE("boundary treatment") {
  const Setup& su = setup();
  Grid g;
  g.L = 40.0;
  g.n1 = 128;
  g.n2 = 3;
  const RelaxSolver solver(su.model, su.shock, g, profile_background(su.profile, g));
  FieldState exact = init_perturbed_shock(su.profile, g, {});
  FieldState copy = exact;
  solver.apply_boundaries(copy);
  for (std::ptrdiff_t i = 0; i < 128; ++i) {
    CHECK(copy.at(V, i, 1) == doctest::Approx(exact.at(V, i, 1)).epsilon(1e-15));
  }
  // interior bit-identical under a perturbed state
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(-1e-3, 1e-3);
  FieldState noisy = exact;
  for (auto& x : noisy.f[U1]) x += d(rng);
  FieldState out = noisy;
  solver.apply_boundaries(out);
  const std::size_t sc = solver.options().sponge_cells;
  for (std::size_t j = 0; j < g.n2; ++j) {
    for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(sc); i < 128 - static_cast<std::ptrdiff_t>(sc); ++i) {
      CHECK(out.at(U1, i, j) == noisy.at(U1, i, j));
    }
    CHECK(out.at(U1, 0, j) == exact.at(U1, 0, j));
    CHECK(out.at(U1, -1, j) == solver.background().f[U1][1]);
  }
}

TEST_CASE("transverse periodicity") {
  const Setup& su = setup();
  Grid g;
  g.L = 20.0;
  g.n1 = 64;
  g.n2 = 8;
  g.n3 = 4;
  BumpSpec b;
  b.amplitude = 0.01;
  b.width = 4.0;
  b.transverse = 0.5;
  const RelaxSolver solver(su.model, su.shock, g, profile_background(su.profile, g));
  FieldState s = init_perturbed_shock(su.profile, g, {b});
  // rotate by one transverse index
  FieldState r = s;
  for (std::size_t q = 0; q < kFieldCount; ++q) {
    for (std::size_t k = 0; k < g.n3; ++k) {
      for (std::size_t j = 0; j < g.n2; ++j) {
        for (std::ptrdiff_t i = -2; i < 66; ++i) {
          r.f[q][g.index(i, (j + 1) % g.n2, k)] = s.f[q][g.index(i, j, k)];
        }
      }
    }
  }
  const double dt = solver.cfl_dt(s);
  for (int n = 0; n < 5; ++n) {
    solver.step(s, dt);
    solver.step(r, dt);
  }
  double worst = 0.0;
  for (std::size_t q = 0; q < kFieldCount; ++q) {
    for (std::size_t k = 0; k < g.n3; ++k) {
      for (std::size_t j = 0; j < g.n2; ++j) {
        for (std::ptrdiff_t i = 0; i < 64; ++i) {
          worst = std::max(worst, std::abs(r.f[q][g.index(i, (j + 1) % g.n2, k)] -
                                           s.f[q][g.index(i, j, k)]));
        }
      }
    }
  }
  CHECK(worst <= 1e-14);
}

TEST_CASE("traceless stress is preserved in 3-D") {
  const Setup& su = setup();
  Grid g;
  g.L = 30.0;
  g.n1 = 96;
  g.n2 = 8;
  g.n3 = 8;
  BumpSpec b;
  b.amplitude = 0.02;
  b.width = 5.0;
  b.transverse = 0.8;
  BumpSpec bu = b;
  bu.component = U2;
  const RelaxSolver solver(su.model, su.shock, g, profile_background(su.profile, g));
  FieldState s = init_perturbed_shock(su.profile, g, {b, bu});
  for (int n = 0; n < 30; ++n) {
    solver.step(s, solver.cfl_dt(s));
    CHECK(traceless_residual(s) < 1e-10);
  }
}

TEST_CASE("frame consistency between 1-D and transverse-constant 3-D") {
  const Setup& su = setup();
  Grid g1;
  g1.L = 30.0;
  g1.n1 = 128;
  Grid g3 = g1;
  g3.n2 = 3;
  g3.n3 = 2;
  BumpSpec b;
  b.amplitude = 0.01;
  b.width = 4.0;
  const RelaxSolver s1(su.model, su.shock, g1, profile_background(su.profile, g1));
  const RelaxSolver s3(su.model, su.shock, g3, profile_background(su.profile, g3));
  FieldState a = init_perturbed_shock(su.profile, g1, {b});
  FieldState c = init_perturbed_shock(su.profile, g3, {b});
  const double dt = s1.cfl_dt(a);
  for (int n = 0; n < 8; ++n) {
    s1.step(a, dt);
    s3.step(c, dt);
    double worst = 0.0;
    for (std::size_t q = 0; q < kFieldCount; ++q) {
      for (std::size_t k = 0; k < g3.n3; ++k) {
        for (std::size_t j = 0; j < g3.n2; ++j) {
          for (std::ptrdiff_t i = 0; i < 128; ++i) {
            worst = std::max(worst, std::abs(a.f[q][g1.index(i, 0, 0)] - c.f[q][g3.index(i, j, k)]));
          }
        }
      }
    }
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("steady profile residual is second order") {
  const Setup& su = setup();
  double prev = 0.0;
  for (std::size_t n1 : {256u, 512u, 1024u}) {
    Grid g;
    g.L = 80.0;
    g.n1 = n1;
    const RelaxSolver solver(su.model, su.shock, g, profile_background(su.profile, g));
    const FieldState d = solver.time_derivative(init_perturbed_shock(su.profile, g, {}));
    double sq = 0.0;
    for (std::size_t q = 0; q < kFieldCount; ++q) {
      for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n1); ++i) {
        sq += d.at(static_cast<Field>(q), i) * d.at(static_cast<Field>(q), i) * g.dx1();
      }
    }
    const double r = std::sqrt(sq);
    if (prev > 0.0) CHECK(std::log2(prev / r) >= 1.9);
    prev = r;
  }
}

TEST_CASE("Newtonian profile is steady to second order") {
  GasModel m = default_model();
  m.tau = 0.0;
  const ShockData sh = make_shock(1.0, 0.0, 1.2, m);
  const ProfileTable p = solve_profile(sh, m);
  double prev = 0.0;
  for (std::size_t n1 : {256u, 512u, 1024u}) {
    Grid g;
    g.L = 80.0;
    g.n1 = n1;
    const RelaxSolver solver(m, sh, g, profile_background(p, g));
    FieldState s = init_perturbed_shock(p, g, {});
    solver.fill_ghosts(s);
    FieldState out(g);
    solver.newtonian_rhs(s, 0.0, out);
    double sq = 0.0;
    for (Field q : {V, U1}) {
      for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n1); ++i) {
        sq += out.at(q, i) * out.at(q, i) * g.dx1();
      }
    }
    const double r = std::sqrt(sq);
    if (prev > 0.0) CHECK(std::log2(prev / r) >= 1.9);
    prev = r;
  }
}

TEST_CASE("Newtonian shear mode decays at the viscous rate") {
  GasModel m = default_model();
  m.tau = 0.0;
  Grid g;
  g.L = 1.0;
  g.n1 = 16;
  g.n2 = 64;
  g.periodic_xi1 = true;
  const RelaxSolver solver(m, resting_frame(), g, constant_background(g, 1.0, 0.0));
  FieldState s = constant_state(g, 1.0, 0.0);
  const double amp = 1e-4;
  for (std::size_t j = 0; j < g.n2; ++j) {
    for (std::ptrdiff_t i = -2; i < 18; ++i) {
      s.at(U1, i, j) = amp * std::sin(2.0 * std::numbers::pi * g.xi2(j));
    }
  }
  const double T = 0.02;
  while (s.t < T) {
    const double dt = std::min(solver.newtonian_dt(s), T - s.t);
    solver.newtonian_step(s, dt);
    if (T - s.t < 1e-15) s.t = T;
  }
  // project onto the initial mode
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < g.n2; ++j) {
    const double phi = std::sin(2.0 * std::numbers::pi * g.xi2(j));
    num += s.at(U1, 5, j) * phi;
    den += amp * phi * phi;
  }
  const double rate = -std::log(num / den) / T;
  const double k = 2.0 * std::numbers::pi;
  CHECK(rate == doctest::Approx(m.mu * k * k).epsilon(0.01));
}

TEST_CASE("blow-up is reported") {
  const GasModel m = default_model();
  Grid g;
  g.L = 10.0;
  g.n1 = 32;
  const RelaxSolver solver(m, resting_frame(), g, constant_background(g, 1.0, 0.0));
  FieldState s = constant_state(g, 1.0, 0.0);
  s.at(V, 10) = -0.5;
  CHECK_THROWS_AS(solver.step(s, 1e-4), BlowUpError);
}
