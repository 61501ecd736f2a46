#include "relaxshock/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "relaxshock/errors.hpp"
#include "relaxshock/parallel.hpp"
#include "relaxshock/relax_solver.hpp"
#include "relaxshock/shift_weight.hpp"
#include "relaxshock/snapshot_io.hpp"

namespace relaxshock {

namespace {

using Index = std::ptrdiff_t;

std::string fmt(double x) { return format_double(x); }

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
}

double safe_ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

std::string time_tag(double t) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "run_%.4f.bin", t);
  return buf;
}

// L2 norm (trapezoid in xi1) of the difference of selected fields.
double l2_distance(const FieldState& a, const FieldState& b, std::initializer_list<Field> qs) {
  const Grid& g = a.grid;
  std::vector<double> col(g.n1);
  for (std::size_t i = 0; i < g.n1; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < g.n3; ++k) {
      for (std::size_t j = 0; j < g.n2; ++j) {
        const std::size_t c = g.index(static_cast<Index>(i), j, k);
        for (Field q : qs) {
          const double d = a.f[q][c] - b.f[q][c];
          acc += (q == P12 || q == P13 || q == P23 ? 2.0 : 1.0) * d * d;
        }
      }
    }
    col[i] = acc * xi1_weight(g, i) * g.dx2() * g.dx3();
  }
  return std::sqrt(tree_sum(col));
}

std::string report_row_csv(const EntropyReport& r) {
  std::ostringstream o;
  o << fmt(r.t) << ',' << fmt(r.eta_total) << ',' << fmt(r.Gs) << ',' << fmt(r.G2) << ','
    << fmt(r.G3) << ',' << fmt(r.D) << ',' << fmt(r.sup_v) << ',' << fmt(r.sup_u) << ','
    << fmt(r.sup_pi) << ',' << fmt(r.X) << ',' << fmt(r.Xdot) << ',' << fmt(r.mass_residual)
    << '\n';
  return o.str();
}

const EntropyReport& nearest_row(const std::vector<EntropyReport>& rows, double t) {
  return *std::min_element(rows.begin(), rows.end(), [t](const auto& a, const auto& b) {
    return std::abs(a.t - t) < std::abs(b.t - t);
  });
}

std::string certificate_text(const ProfileRun& run) {
  const ProfileCertificate& c = run.certificate;
  const ProfileTable& p = run.table;
  std::ostringstream o;
  o << "# shock profile certificate\n"
    << "points=" << p.size() << "\nxi_min=" << fmt(p.xi.front()) << "\nxi_max=" << fmt(p.xi.back())
    << "\nsigma=" << fmt(p.shock.sigma) << "\nsigma_star=" << fmt(p.shock.sigma_star)
    << "\nu1_plus=" << fmt(p.shock.u1_plus) << "\ndelta=" << fmt(p.shock.delta)
    << "\nwidth=" << fmt(run.width) << "\ntau_max=" << fmt(run.tau_bound.tau_max)
    << "\ntau_max_at=" << fmt(run.tau_bound.z_min) << "\nrh_mass=" << fmt(run.rh.mass)
    << "\nrh_momentum=" << fmt(run.rh.momentum)
    << "\nv_increasing=" << c.v_increasing << "\nu1_decreasing=" << c.u1_decreasing
    << "\nwithin_end_states=" << c.within_end_states << "\ntails_converged=" << c.tails_converged
    << "\nrates_positive=" << c.rates_positive << "\nrate_minus=" << fmt(c.rate_minus)
    << "\nrate_plus=" << fmt(c.rate_plus) << "\nrate_minus_over_delta=" << fmt(c.rate_minus_over_delta)
    << "\nrate_plus_over_delta=" << fmt(c.rate_plus_over_delta)
    << "\nfit_points_minus=" << c.fit_points_minus << "\nfit_points_plus=" << c.fit_points_plus
    << "\nmax_stress_over_slope=" << fmt(c.max_stress_over_slope)
    << "\nstress_bound_finite=" << c.stress_bound_finite
    << "\ntensor_completion_residual=" << fmt(c.tensor_completion_residual)
    << "\node_residual=" << fmt(c.ode_residual) << "\nsplit_residual=" << fmt(c.split_residual)
    << "\ncertificate_ok=" << c.all_ok() << "\n";
  return o.str();
}

double steady_residual_norm(const ProfileTable& profile, const Grid& grid) {
  const FieldState s = init_perturbed_shock(profile, grid, {});
  const RelaxSolver solver(profile.model, profile.shock, grid,
                           profile_background(profile, grid));
  const FieldState d = solver.time_derivative(s);
  FieldState zero(grid);
  return l2_distance(d, zero, {V, U1, U2, U3, P11, P22, P33, P12, P13, P23, P2});
}

}  // namespace

ProfileRun run_profile(const RunConfig& cfg) {
  ProfileRun run;
  const ShockData shock = cfg.shock();
  run.rh = rankine_hugoniot_residuals(shock, cfg.model);
  run.tau_bound = tau_admissible_max(shock, cfg.model);
  run.table = solve_profile(shock, cfg.model, cfg.profile);
  run.certificate = validate_profile(run.table);
  run.width = characteristic_width(shock, cfg.model);
  return run;
}

StabilityResult run_stability(const RunConfig& cfg, const OutDir& out) {
  const ShockData shock = cfg.shock();
  const ProfileTable profile = solve_profile(shock, cfg.model, cfg.profile);
  const Grid& grid = cfg.grid;
  FieldState s = init_perturbed_shock(profile, grid, cfg.bumps());
  const RelaxSolver solver(cfg.model, shock, grid, profile_background(profile, grid), cfg.solver);
  solver.apply_boundaries(s);
  ShiftState shift = make_shift_state(profile, cfg.nu);
  const std::size_t skip = grid.periodic_xi1 ? 0 : cfg.solver.sponge_cells;
  const std::size_t mass_skip = grid.periodic_xi1 ? 0 : 2 * cfg.solver.sponge_cells;
  MassTracker mass(s, shock.sigma, mass_skip);

  StabilityResult result;
  StabilitySummary& sum = result.summary;
  {
    const SupNorms sn = perturbation_sup(s, shift, 0);
    sum.init_sup_v = sn.v;
    const FieldState base = init_perturbed_shock(profile, grid, {});
    sum.init_l2_v = l2_distance(s, base, {V});
  }

  std::ofstream csv;
  if (out) {
    std::filesystem::create_directories(*out);
    write_profile_snapshot(*out / "profile.bin", profile);
    csv.open(*out / "timeseries.csv");
    if (!csv) throw ConfigError("cannot write timeseries.csv");
    csv << "t,eta_total,Gs,G2,G3,D,sup_v,sup_u,sup_pi,X,Xdot,mass_residual\n";
  }
  auto emit = [&](bool snapshot) {
    EntropyReport r = evaluate_report(s, shift, skip, mass.residual());
    result.series.push_back(r);
    sum.traceless_max = std::max(sum.traceless_max, traceless_residual(s));
    sum.max_abs_mass_residual = std::max(sum.max_abs_mass_residual, std::abs(r.mass_residual));
    if (csv.is_open()) csv << report_row_csv(r);
    if (out && snapshot) write_field_snapshot(*out / time_tag(s.t), s, shift.X, shift.Xdot);
  };

  shift.Xdot = shift_rate(s, shift);
  emit(true);

  const double T = cfg.t_final;
  std::size_t out_index = 1, snap_index = 1;
  auto next_output = [&] { return std::min(T, static_cast<double>(out_index) * cfg.output_every); };
  auto next_snapshot = [&] {
    return cfg.snapshot_every > 0.0 ? std::min(T, static_cast<double>(snap_index) * cfg.snapshot_every)
                                    : T;
  };
  while (s.t < T) {
    const double target = std::min(next_output(), next_snapshot());
    const double remaining = target - s.t;
    const double dt_cfl = solver.cfl_dt(s);
    const bool land = remaining <= dt_cfl * (1.0 + 1e-12);
    const double dt = land ? remaining : dt_cfl;
    solver.step(s, shift, dt);
    if (land) s.t = target;
    mass.record(s, dt);
    ++sum.steps;
    if (land) {
      const bool is_output = target >= next_output();
      const bool is_snap = target >= next_snapshot();
      if (is_output) ++out_index;
      if (is_snap) ++snap_index;
      const bool final = target >= T;
      if (is_output || final) emit(is_snap || final);
      else if (is_snap && out) write_field_snapshot(*out / time_tag(s.t), s, shift.X, shift.Xdot);
    }
  }

  sum.initial = result.series.front();
  sum.final = result.series.back();
  sum.reference = nearest_row(result.series, cfg.reference_time);
  sum.eta_ratio = safe_ratio(sum.final.eta_total, sum.reference.eta_total);
  sum.sup_v_ratio = safe_ratio(sum.final.sup_v, sum.reference.sup_v);
  sum.sup_u_ratio = safe_ratio(sum.final.sup_u, sum.reference.sup_u);
  sum.G2_ratio = safe_ratio(sum.final.G2, sum.reference.G2);
  sum.max_abs_xdot = std::max(shift.max_abs_xdot, std::abs(sum.initial.Xdot));
  sum.xdot_final_over_max = safe_ratio(std::abs(sum.final.Xdot), sum.max_abs_xdot);
  std::vector<double> ratios;
  for (const auto& r : result.series) {
    if (r.sup_v > 0.0) ratios.push_back(r.xdot_abs / r.sup_v);
  }
  if (!ratios.empty()) {
    std::vector<double> sorted = ratios;
    std::sort(sorted.begin(), sorted.end());
    sum.xdot_sup_median = sorted[sorted.size() / 2];
    sum.xdot_sup_max = sorted.back();
  }

  if (out) {
    std::ostringstream o;
    o << "# stability run\n" << render_config(cfg) << "steps=" << sum.steps
      << "\ninit_l2_v=" << fmt(sum.init_l2_v) << "\ninit_sup_v=" << fmt(sum.init_sup_v)
      << "\nreference_t=" << fmt(sum.reference.t) << "\nfinal_t=" << fmt(sum.final.t)
      << "\neta_ratio=" << fmt(sum.eta_ratio) << "\nsup_v_ratio=" << fmt(sum.sup_v_ratio)
      << "\nsup_u_ratio=" << fmt(sum.sup_u_ratio) << "\nG2_ratio=" << fmt(sum.G2_ratio)
      << "\nmax_abs_xdot=" << fmt(sum.max_abs_xdot)
      << "\nxdot_final_over_max=" << fmt(sum.xdot_final_over_max)
      << "\nxdot_over_sup_v_median=" << fmt(sum.xdot_sup_median)
      << "\nxdot_over_sup_v_max=" << fmt(sum.xdot_sup_max)
      << "\ntraceless_max=" << fmt(sum.traceless_max)
      << "\nmass_residual_final=" << fmt(sum.final.mass_residual)
      << "\nmass_residual_max_abs=" << fmt(sum.max_abs_mass_residual) << "\n";
    write_text(*out / "report.txt", o.str());
  }
  return result;
}

namespace {

// Advances a relaxed or Newtonian state to exactly t_final.
std::size_t advance_to(const RelaxSolver& solver, FieldState& s, double t_final, bool newtonian) {
  std::size_t steps = 0;
  while (s.t < t_final) {
    const double dt_max = newtonian ? solver.newtonian_dt(s) : solver.cfl_dt(s);
    const double remaining = t_final - s.t;
    const bool land = remaining <= dt_max * (1.0 + 1e-12);
    const double dt = land ? remaining : dt_max;
    if (newtonian) {
      solver.newtonian_step(s, dt);
    } else {
      solver.step(s, dt);
    }
    if (land) s.t = t_final;
    ++steps;
  }
  return steps;
}

struct LimitPair {
  double E = 0.0;
  double S = 0.0;
  std::size_t steps = 0;
};

struct LimitSetup {
  GasModel base;
  ShockData shock;
  ProfileTable profile;  // tau = 0 profile
  Grid grid;
  FieldState initial;
  FieldState newtonian;
};

LimitSetup make_limit_setup(const RunConfig& cfg, const Grid& grid) {
  LimitSetup su;
  su.base = cfg.model;
  su.base.tau = 0.0;
  su.shock = make_shock(cfg.v_minus, cfg.u1_minus, cfg.v_plus, su.base);
  su.profile = solve_profile(su.shock, su.base, cfg.profile);
  su.grid = grid;
  su.initial = init_perturbed_shock(su.profile, grid, cfg.bumps());
  const RelaxSolver newton(su.base, su.shock, grid, profile_background(su.profile, grid),
                           cfg.solver);
  newton.apply_boundaries(su.initial);
  FieldState stress(grid);
  newton.newtonian_stress(su.initial, stress);
  for (Field q : {P11, P22, P33, P12, P13, P23, P2}) su.initial.f[q] = stress.f[q];
  su.newtonian = su.initial;
  advance_to(newton, su.newtonian, cfg.t_final, true);
  return su;
}

LimitPair limit_distance(const RunConfig& cfg, const LimitSetup& su, double tau) {
  GasModel m = su.base;
  m.tau = tau;
  const RelaxSolver solver(m, su.shock, su.grid, profile_background(su.profile, su.grid),
                           cfg.solver);
  FieldState s = su.initial;
  LimitPair r;
  r.steps = advance_to(solver, s, cfg.t_final, false);
  r.E = l2_distance(s, su.newtonian, {V, U1, U2, U3});
  solver.fill_ghosts(s);
  FieldState closure(su.grid);
  solver.newtonian_stress(s, closure);
  r.S = l2_distance(s, closure, {P11, P22, P33, P12, P13, P23});
  return r;
}

}  // namespace

RelaxLimitResult run_relax_limit(const RunConfig& cfg, const std::vector<double>& taus,
                                 const OutDir& out) {
  if (taus.empty()) throw ConfigError("empty tau list");
  {
    const ShockData shock = cfg.shock();
    const TauBound bound = tau_admissible_max(shock, cfg.model);
    for (std::size_t i = 0; i < taus.size(); ++i) {
      if (!(taus[i] > 0.0) || taus[i] > bound.tau_max) {
        throw AdmissibilityError("tau " + fmt(taus[i]) + " is not admissible (bound " +
                                 fmt(bound.tau_max) + ")");
      }
      if (i > 0 && !(taus[i] < taus[i - 1])) throw ConfigError("tau list must be descending");
    }
  }
  Grid fine = cfg.grid;
  fine.n1 *= static_cast<std::size_t>(cfg.refine_factor);
  SolverOptions fine_opts = cfg.solver;
  fine_opts.sponge_cells *= static_cast<std::size_t>(cfg.refine_factor);
  RunConfig fine_cfg = cfg;
  fine_cfg.grid = fine;
  fine_cfg.solver = fine_opts;

  const LimitSetup coarse_setup = make_limit_setup(cfg, cfg.grid);
  const LimitSetup fine_setup = make_limit_setup(fine_cfg, fine);

  RelaxLimitResult res;
  for (double tau : taus) {
    RelaxLimitRow row;
    row.tau = tau;
    const LimitPair c = limit_distance(cfg, coarse_setup, tau);
    const LimitPair f = limit_distance(fine_cfg, fine_setup, tau);
    row.E = c.E;
    row.S = c.S;
    row.steps = c.steps;
    row.E_fine = f.E;
    row.S_fine = f.S;
    res.rows.push_back(row);
  }
  res.E_decreasing = true;
  res.S_decreasing = true;
  res.min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < res.rows.size(); ++i) {
    const RelaxLimitRow& r = res.rows[i];
    res.max_refinement_change = std::max(res.max_refinement_change, std::abs(r.E_fine - r.E));
    if (i == 0) continue;
    const RelaxLimitRow& prev = res.rows[i - 1];
    if (!(r.E < prev.E)) res.E_decreasing = false;
    if (!(r.S < prev.S)) res.S_decreasing = false;
    res.min_gap = std::min(res.min_gap, std::abs(prev.E - r.E));
  }
  if (res.rows.size() < 2) res.min_gap = 0.0;

  if (out) {
    std::ostringstream csv;
    csv << "tau,E,S,E_fine,S_fine,steps\n";
    for (const auto& r : res.rows) {
      csv << fmt(r.tau) << ',' << fmt(r.E) << ',' << fmt(r.S) << ',' << fmt(r.E_fine) << ','
          << fmt(r.S_fine) << ',' << r.steps << '\n';
    }
    write_text(*out / "relax_limit.csv", csv.str());
    std::ostringstream o;
    o << "# relaxation limit sweep\n" << render_config(cfg) << "E_decreasing=" << res.E_decreasing
      << "\nS_decreasing=" << res.S_decreasing
      << "\nmax_refinement_change=" << fmt(res.max_refinement_change)
      << "\nmin_gap=" << fmt(res.min_gap) << "\n";
    write_text(*out / "report.txt", o.str());
  }
  return res;
}

std::vector<ValidationCheck> run_validation(const RunConfig& cfg) {
  std::vector<ValidationCheck> checks;
  auto add = [&](std::string name, bool pass, std::string detail) {
    checks.push_back({std::move(name), pass, std::move(detail)});
  };

  const ShockData shock = cfg.shock();
  const RankineHugoniotResiduals rh = rankine_hugoniot_residuals(shock, cfg.model);
  add("rankine_hugoniot", rh.mass < 1e-12 && rh.momentum < 1e-12 && lax_condition(shock),
      "mass=" + fmt(rh.mass) + " momentum=" + fmt(rh.momentum));

  {
    const TauBound b = tau_admissible_max(shock, cfg.model);
    const double floor = 0.5 * shock.sigma_star * cfg.model.viscosity_sum();
    double worst = std::numeric_limits<double>::infinity();
    for (int n = 0; n <= 4096; ++n) {
      const double z = shock.v_minus + shock.delta_v() * n / 4096.0;
      worst = std::min(worst, shock.sigma_star * cfg.model.viscosity_sum() +
                                  cfg.model.tau * shock.sigma_star *
                                      hugoniot_h_derivative(z, shock, cfg.model));
    }
    add("tau_denominator", cfg.model.tau <= b.tau_max && worst >= floor * (1.0 - 1e-12),
        "tau_max=" + fmt(b.tau_max) + " min_denominator=" + fmt(worst) + " floor=" + fmt(floor));
  }

  ProfileTable profile = solve_profile(shock, cfg.model, cfg.profile);
  if (cfg.corrupt_profile) {
    for (std::size_t i = 0; i < profile.size(); i += 7) profile.pi11_s[i] *= 1.001;
  }
  const ProfileCertificate cert = validate_profile(profile);
  add("profile_ode_residual", cert.ode_residual < 10.0 * cfg.profile.tol,
      "residual=" + fmt(cert.ode_residual));
  add("profile_split_identity", cert.split_residual < 1e-8,
      "residual=" + fmt(cert.split_residual));
  add("profile_certificate", cert.all_ok(),
      "rate_minus=" + fmt(cert.rate_minus) + " rate_plus=" + fmt(cert.rate_plus));

  {
    const ShiftState st = make_shift_state(profile, cfg.nu);
    const double lo = profile.xi.front() - 20.0, hi = profile.xi.back() + 20.0;
    bool ok = true;
    double prev = 0.0;
    for (int n = 0; n <= 4000; ++n) {
      const double x = lo + (hi - lo) * n / 4000.0;
      const double a = weight(x, st);
      if (a < 1.0 - 1e-14 || a > 1.0 + st.nu + 1e-14) ok = false;
      if (n > 0 && a < prev - 1e-14) ok = false;
      if (weight_slope(x, st) < 0.0) ok = false;
      prev = a;
    }
    add("weight_bounds", ok, "nu=" + fmt(st.nu));
  }

  {
    const std::size_t n1 = 128, n2 = 32, n3 = 32;
    std::vector<double> lin(n1 * n2 * n3);
    for (std::size_t c = 0; c < lin.size(); ++c) {
      lin[c] = (static_cast<double>(c % n1) + 0.5) / static_cast<double>(n1);
    }
    const PoincareResult eq = poincare_check(lin, n1, n2, n3);
    bool ok = std::abs(eq.lhs - 1.0 / 12.0) < 1e-4 && std::abs(eq.rhs - 1.0 / 12.0) < 1e-4;
    std::size_t held = 0;
    for (std::uint64_t k = 0; k < 10; ++k) {
      held += poincare_check(random_band_limited(cfg.seed + k, n1, n2, n3), n1, n2, n3).holds;
    }
    ok = ok && held == 10;
    add("poincare", ok, "equality lhs=" + fmt(eq.lhs) + " rhs=" + fmt(eq.rhs) +
                            " random_held=" + std::to_string(held) + "/10");
  }

  {
    Grid g;
    g.L = 40.0;
    g.n1 = 96;
    g.n2 = 8;
    g.n3 = 8;
    BumpSpec b;
    b.amplitude = 0.05 * shock.delta_v();
    b.width = 4.0;
    b.transverse = 0.5;
    FieldState s = init_perturbed_shock(profile, g, {b});
    const RelaxSolver solver(cfg.model, shock, g, profile_background(profile, g), cfg.solver);
    double worst = 0.0;
    for (int n = 0; n < 20; ++n) {
      solver.step(s, solver.cfl_dt(s));
      worst = std::max(worst, traceless_residual(s));
    }
    add("traceless_preservation", worst < 1e-10, "max_relative_trace=" + fmt(worst));
  }

  {
    Grid g1;
    g1.L = 40.0;
    g1.n1 = 128;
    Grid g3 = g1;
    g3.n2 = 4;
    g3.n3 = 4;
    BumpSpec b;
    b.amplitude = 0.05 * shock.delta_v();
    b.width = 4.0;
    FieldState a = init_perturbed_shock(profile, g1, {b});
    FieldState c = init_perturbed_shock(profile, g3, {b});
    const RelaxSolver s1(cfg.model, shock, g1, profile_background(profile, g1), cfg.solver);
    const RelaxSolver s3(cfg.model, shock, g3, profile_background(profile, g3), cfg.solver);
    const double dt = s1.cfl_dt(a);
    double worst = 0.0;
    for (int n = 0; n < 10; ++n) {
      s1.step(a, dt);
      s3.step(c, dt);
      for (std::size_t k = 0; k < g3.n3; ++k) {
        for (std::size_t j = 0; j < g3.n2; ++j) {
          for (Index i = 0; i < static_cast<Index>(g1.n1); ++i) {
            for (std::size_t q = 0; q < kFieldCount; ++q) {
              worst = std::max(worst, std::abs(a.f[q][g1.index(i, 0, 0)] - c.f[q][g3.index(i, j, k)]));
            }
          }
        }
      }
    }
    add("frame_consistency", worst < 1e-12, "max_difference=" + fmt(worst));
  }

  {
    double r[3];
    const std::size_t ns[3] = {256, 512, 1024};
    for (int n = 0; n < 3; ++n) {
      Grid g;
      g.L = 80.0;
      g.n1 = ns[n];
      r[n] = steady_residual_norm(profile, g);
    }
    const double o1 = std::log2(r[0] / r[1]), o2 = std::log2(r[1] / r[2]);
    add("self_convergence", o1 >= 1.9 && o2 >= 1.9,
        "orders=" + fmt(o1) + "," + fmt(o2) + " residuals=" + fmt(r[0]) + "," + fmt(r[1]) + "," +
            fmt(r[2]));
  }
  return checks;
}

int cmd_profile(const RunConfig& cfg, const OutDir& out) {
  const ProfileRun run = run_profile(cfg);
  const std::string text = certificate_text(run);
  std::cout << text;
  if (out) {
    write_profile_snapshot(*out / "profile.bin", run.table);
    write_text(*out / "report.txt", text);
  }
  return run.certificate.all_ok() ? 0 : static_cast<int>(ExitCode::validation);
}

int cmd_stability(const RunConfig& cfg, const OutDir& out) {
  const StabilityResult r = run_stability(cfg, out);
  const StabilitySummary& s = r.summary;
  std::cout << "steps=" << s.steps << "\neta_ratio=" << fmt(s.eta_ratio)
            << "\nsup_v_ratio=" << fmt(s.sup_v_ratio) << "\nsup_u_ratio=" << fmt(s.sup_u_ratio)
            << "\nG2_ratio=" << fmt(s.G2_ratio)
            << "\nxdot_final_over_max=" << fmt(s.xdot_final_over_max)
            << "\ntraceless_max=" << fmt(s.traceless_max)
            << "\nmass_residual_final=" << fmt(s.final.mass_residual) << "\n";
  return 0;
}

int cmd_relax_limit(const RunConfig& cfg, const std::vector<double>& taus, const OutDir& out) {
  const RelaxLimitResult r = run_relax_limit(cfg, taus, out);
  std::cout << "tau,E,S,E_fine,S_fine\n";
  for (const auto& row : r.rows) {
    std::cout << fmt(row.tau) << ',' << fmt(row.E) << ',' << fmt(row.S) << ',' << fmt(row.E_fine)
              << ',' << fmt(row.S_fine) << '\n';
  }
  std::cout << "E_decreasing=" << r.E_decreasing << "\nS_decreasing=" << r.S_decreasing
            << "\nmax_refinement_change=" << fmt(r.max_refinement_change)
            << "\nmin_gap=" << fmt(r.min_gap) << "\n";
  return 0;
}

int cmd_validate(const RunConfig& cfg, const OutDir& out) {
  const auto checks = run_validation(cfg);
  std::ostringstream o;
  bool all = true;
  for (const auto& c : checks) {
    o << (c.pass ? "PASS " : "FAIL ") << c.name << " " << c.detail << "\n";
    all = all && c.pass;
  }
  if (!all) {
    o << "failed:";
    for (const auto& c : checks) {
      if (!c.pass) o << " " << c.name;
    }
    o << "\n";
  }
  std::cout << o.str();
  if (out) write_text(*out / "report.txt", o.str());
  return all ? 0 : static_cast<int>(ExitCode::validation);
}

}  // namespace relaxshock
