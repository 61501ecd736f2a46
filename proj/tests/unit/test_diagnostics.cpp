#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "relaxshock/diagnostics.hpp"
#include "relaxshock/relax_solver.hpp"

using namespace relaxshock;

namespace {

GasModel default_model() { return GasModel{5.0 / 3.0, 1.0, 1.0, 0.01}; }

struct Setup {
  GasModel model = default_model();
  ShockData shock = make_shock(1.0, 0.0, 1.2, model);
  ProfileTable profile = solve_profile(shock, model);
};

const Setup& setup() {
  static const Setup s;
  return s;
}

Grid line_grid(double L, std::size_t n1) {
  Grid g;
  g.L = L;
  g.n1 = n1;
  return g;
}

BumpSpec bump(Field q, double amplitude, double width = 3.0, double center = 0.0) {
  BumpSpec b;
  b.component = q;
  b.amplitude = amplitude;
  b.width = width;
  b.center = center;
  return b;
}

}  // namespace

TEST_CASE("relative entropy of the volume") {
  GasModel m = default_model();
  m.gamma = 2.0;
  // H(v) = 1/v for gamma = 2: H(2|1) = 1/2 - 1 + p(1) (2 - 1)
  CHECK(relative_entropy_H(2.0, 1.0, m) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(entropy_H(2.0, m) == doctest::Approx(0.5).epsilon(1e-15));
  m.gamma = 5.0 / 3.0;
  const double c = 0.5 * m.gamma * std::pow(3.0, -m.gamma - 1.0);  // min H''/2 on [0.5, 3]
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> r(0.5, 3.0);
  for (int n = 0; n < 2000; ++n) {
    const double v = r(rng), w = r(rng);
    CHECK(relative_entropy_H(v, v, m) == 0.0);
    CHECK(relative_entropy_H(v, w, m) >= 0.0);
    CHECK(relative_entropy_H(v, w, m) >= c * (v - w) * (v - w) * (1.0 - 1e-12));
  }
  // H' = -p
  for (double v : {0.6, 1.0, 2.2}) {
    const double e = 1e-6;
    const double fd = (entropy_H(v + e, m) - entropy_H(v - e, m)) / (2 * e);
    CHECK(fd == doctest::Approx(-pressure(v, m)).epsilon(1e-8));
  }
}

TEST_CASE("diagnostics vanish on the profile") {
  const Setup& su = setup();
  const Grid g = line_grid(40.0, 400);
  FieldState s = init_perturbed_shock(su.profile, g, {});
  const RelaxSolver solver(su.model, su.shock, g, profile_background(su.profile, g));
  solver.fill_ghosts(s);
  const ShiftState st = make_shift_state(su.profile);
  for (double e : relative_entropy_field(s, st)) CHECK(e == 0.0);
  CHECK(weighted_entropy_total(s, st) == 0.0);
  const GoodTerms gt = good_terms(s, st);
  CHECK(gt.Gs == 0.0);
  CHECK(gt.G2 == 0.0);
  CHECK(gt.G3 == 0.0);
  CHECK(gt.D == 0.0);
  for (double f : flux_mismatch_F(s, st)) CHECK(f == 0.0);
  const SupNorms sn = perturbation_sup(s, st, 0);
  CHECK(sn.v == 0.0);
  CHECK(sn.u == 0.0);
  CHECK(sn.pi == 0.0);
}

TEST_CASE("quadratic scaling of the entropy in the velocity") {
  const Setup& su = setup();
  const Grid g = line_grid(40.0, 800);
  const ShiftState st = make_shift_state(su.profile);
  const double e1 = weighted_entropy_total(init_perturbed_shock(su.profile, g, {bump(U1, 0.01)}), st);
  const double e2 = weighted_entropy_total(init_perturbed_shock(su.profile, g, {bump(U1, 0.02)}), st);
  CHECK(e2 == doctest::Approx(4.0 * e1).epsilon(1e-13));
  CHECK(e1 > 0.0);
}

TEST_CASE("good terms are nonnegative and G2 needs transverse velocity") {
  const Setup& su = setup();
  Grid g;
  g.L = 30.0;
  g.n1 = 120;
  g.n2 = 4;
  g.n3 = 4;
  const RelaxSolver solver(su.model, su.shock, g, profile_background(su.profile, g));
  const ShiftState st = make_shift_state(su.profile);
  BumpSpec b = bump(V, 0.02);
  b.transverse = 0.5;
  FieldState s = init_perturbed_shock(su.profile, g, {b, bump(U1, -0.01)});
  solver.fill_ghosts(s);
  GoodTerms gt = good_terms(s, st);
  CHECK(gt.Gs > 0.0);
  CHECK(gt.G3 > 0.0);
  CHECK(gt.D > 0.0);
  CHECK(gt.G2 == 0.0);
  FieldState t = init_perturbed_shock(su.profile, g, {b, bump(U2, 0.01, 3.0, 2.0)});
  solver.fill_ghosts(t);
  gt = good_terms(t, st);
  CHECK(gt.G2 > 0.0);
  for (double e : relative_entropy_field(t, st)) CHECK(e >= 0.0);
}

TEST_CASE("Gs and D against refined Simpson quadrature") {
  const Setup& su = setup();
  const GasModel& m = su.model;
  const double L = 12.0, eps = 1e-3;
  const Grid g = line_grid(L, 24000);
  const ShiftState st = make_shift_state(su.profile);
  auto gauss = [](double x) { return std::exp(-(x - 0.5) * (x - 0.5)); };
  auto dgauss = [&](double x) { return -2.0 * (x - 0.5) * gauss(x); };
  auto v_of = [&](double x) {
    const double vs = eval_profile(su.profile, x).v;
    return std::pow(pressure(vs, m) + eps * gauss(x), -1.0 / m.gamma);
  };
  FieldState s = init_perturbed_shock(su.profile, g, {});
  for (std::ptrdiff_t i = -2; i < static_cast<std::ptrdiff_t>(g.n1) + 2; ++i) {
    s.at(V, i) = v_of(g.xi1(i));
  }
  const GoodTerms gt = good_terms(s, st);

  // integrate over the cell-center span with trapezoid end corrections absent:
  // the integrands are negligible at |xi| = L
  const int n = 4 * 24000;
  const double lo = g.xi1(0), hi = g.xi1(static_cast<std::ptrdiff_t>(g.n1) - 1);
  const double h = (hi - lo) / n;
  double gs = 0.0, d = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double x = lo + k * h;
    const double w = (k == 0 || k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    const double dvs = eval_profile_slope(su.profile, x);
    const double dp = eps * gauss(x);
    gs += w * dvs * dp * dp;
    const double v = v_of(x);
    d += w * weight(x, st) * (eps * dgauss(x)) * (eps * dgauss(x)) /
         (m.gamma * std::pow(v, -m.gamma - 1.0));
  }
  gs *= h / 3.0;
  d *= m.viscosity_sum() * h / 3.0;
  CHECK(gt.Gs == doctest::Approx(gs).epsilon(1e-6));
  CHECK(gt.D == doctest::Approx(d).epsilon(1e-6));
}

TEST_CASE("flux mismatch forms agree") {
  const Setup& su = setup();
  const Grid g = line_grid(30.0, 300);
  const ShiftState st = make_shift_state(su.profile);
  const FieldState vonly = init_perturbed_shock(su.profile, g, {bump(V, 0.02)});
  const ShiftedProfile sp = sample_shifted_profile(g, st);
  const auto F = flux_mismatch_F(vonly, st);
  for (std::size_t i = 0; i < g.n1; ++i) {
    const double v = vonly.f[V][g.index(static_cast<std::ptrdiff_t>(i), 0, 0)];
    CHECK(F[i] == doctest::Approx(su.shock.sigma_star / v * (v - sp.v[i])).epsilon(1e-14));
  }
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> d(-0.01, 0.01);
  FieldState r = init_perturbed_shock(su.profile, g, {});
  for (std::ptrdiff_t i = 0; i < 300; ++i) {
    r.at(V, i) += d(rng);
    r.at(U1, i) += d(rng);
  }
  const auto f1 = flux_mismatch_F(r, st);
  const auto f3 = flux_mismatch_F_density_form(r, st);
  for (std::size_t i = 0; i < f1.size(); ++i) CHECK(std::abs(f1[i] - f3[i]) < 1e-13);
}

TEST_CASE("diagnostics are translation consistent") {
  const Setup& su = setup();
  Grid g = line_grid(60.0, 2400);
  const double shift = 60 * g.dx1();
  const BumpSpec b = bump(V, 0.01);
  const BumpSpec bu = bump(U1, 0.005, 2.0, 1.0);
  auto build = [&](double X) {
    FieldState s(g);
    for (std::ptrdiff_t i = -2; i < static_cast<std::ptrdiff_t>(g.n1) + 2; ++i) {
      const double x = g.xi1(i) - X;
      const ProfileSample ps = eval_profile(su.profile, x);
      const auto pi = complete_stress(ps.pi11);
      s.at(V, i) = ps.v + bump_shape(b, x, 0.5, 0.5);
      s.at(U1, i) = ps.u1 + bump_shape(bu, x, 0.5, 0.5);
      s.at(P11, i) = pi[0];
      s.at(P22, i) = pi[1];
      s.at(P33, i) = pi[2];
      s.at(P2, i) = ps.pi2;
    }
    return s;
  };
  ShiftState a = make_shift_state(su.profile);
  ShiftState c = a;
  c.X = shift;
  const FieldState s0 = build(0.0), s1 = build(shift);
  CHECK(weighted_entropy_total(s1, c) == doctest::Approx(weighted_entropy_total(s0, a)).epsilon(1e-8));
  const GoodTerms g0 = good_terms(s0, a), g1 = good_terms(s1, c);
  CHECK(g1.Gs == doctest::Approx(g0.Gs).epsilon(1e-8));
  CHECK(g1.G3 == doctest::Approx(g0.G3).epsilon(1e-8));
  CHECK(g1.D == doctest::Approx(g0.D).epsilon(1e-8));
  CHECK(perturbation_sup(s1, c, 8).v == doctest::Approx(perturbation_sup(s0, a, 8).v).epsilon(1e-8));
}

TEST_CASE("Poincare inequality") {
  const std::size_t n1 = 128, n2 = 16, n3 = 16;
  std::vector<double> f(n1 * n2 * n3, 2.5);
  PoincareResult r = poincare_check(f, n1, n2, n3);
  CHECK(std::abs(r.lhs) < 1e-14);
  CHECK(std::abs(r.rhs) < 1e-14);
  CHECK(r.holds);
  for (std::size_t c = 0; c < f.size(); ++c) f[c] = (static_cast<double>(c % n1) + 0.5) / n1;
  r = poincare_check(f, n1, n2, n3);
  CHECK(r.lhs == doctest::Approx(1.0 / 12.0).epsilon(1e-4));
  CHECK(r.rhs == doctest::Approx(1.0 / 12.0).epsilon(1e-3));
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    CHECK(poincare_check(random_band_limited(seed, n1, n2, n3), n1, n2, n3).holds);
  }
  CHECK(random_band_limited(3, n1, n2, n3) == random_band_limited(3, n1, n2, n3));
}

TEST_CASE("interior mass balance over a short run") {
  const Setup& su = setup();
  const Grid g = line_grid(40.0, 512);
  const RelaxSolver solver(su.model, su.shock, g, profile_background(su.profile, g));
  FieldState s = init_perturbed_shock(su.profile, g, {bump(V, 0.02, 4.0)});
  MassTracker tracker(s, su.shock.sigma, 16);
  for (int n = 0; n < 200; ++n) {
    const double dt = solver.cfl_dt(s);
    solver.step(s, dt);
    tracker.record(s, dt);
  }
  CHECK(std::abs(tracker.residual()) < 1e-8);
}
