#include "relaxshock/relax_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "relaxshock/errors.hpp"
#include "relaxshock/parallel.hpp"

namespace relaxshock {

namespace {

using Index = std::ptrdiff_t;

constexpr Field kStressFields[] = {P11, P22, P33, P12, P13, P23, P2};

// Neighbor offsets of a (j, k) row; transverse directions wrap by index.
struct RowOffsets {
  Index jp1 = 0, jm1 = 0, jp2 = 0, jm2 = 0;
  Index kp1 = 0, km1 = 0, kp2 = 0, km2 = 0;
};

RowOffsets row_offsets(const Grid& g, std::size_t j, std::size_t k) {
  const Index row = static_cast<Index>(g.row());
  const Index plane = row * static_cast<Index>(g.n2);
  auto wrap = [](std::size_t idx, Index shift, std::size_t n) {
    const Index m = static_cast<Index>(n);
    return ((static_cast<Index>(idx) + shift) % m + m) % m - static_cast<Index>(idx);
  };
  RowOffsets o;
  o.jp1 = wrap(j, 1, g.n2) * row;
  o.jm1 = wrap(j, -1, g.n2) * row;
  o.jp2 = wrap(j, 2, g.n2) * row;
  o.jm2 = wrap(j, -2, g.n2) * row;
  o.kp1 = wrap(k, 1, g.n3) * plane;
  o.km1 = wrap(k, -1, g.n3) * plane;
  o.kp2 = wrap(k, 2, g.n3) * plane;
  o.km2 = wrap(k, -2, g.n3) * plane;
  return o;
}

struct Stress {
  double s11, s22, s33, s12, s13, s23, s2;
};

// Newtonian stress from central differences of u at flat index c.
Stress stress_at(const FieldState& s, std::size_t c, const RowOffsets& o, const GasModel& m,
                 double inv2dx1, double inv2dx2, double inv2dx3, bool t2, bool t3) {
  const double* u[3] = {s.f[U1].data(), s.f[U2].data(), s.f[U3].data()};
  double G[3][3] = {};
  for (int a = 0; a < 3; ++a) {
    G[a][0] = (u[a][c + 1] - u[a][c - 1]) * inv2dx1;
    if (t2) G[a][1] = (u[a][c + o.jp1] - u[a][c + o.jm1]) * inv2dx2;
    if (t3) G[a][2] = (u[a][c + o.kp1] - u[a][c + o.km1]) * inv2dx3;
  }
  const double div = G[0][0] + G[1][1] + G[2][2];
  const double third = 2.0 / 3.0 * div;
  return {m.mu * (2.0 * G[0][0] - third),  m.mu * (2.0 * G[1][1] - third),
          m.mu * (2.0 * G[2][2] - third),  m.mu * (G[0][1] + G[1][0]),
          m.mu * (G[0][2] + G[2][0]),      m.mu * (G[1][2] + G[2][1]),
          m.lambda * div};
}

std::size_t min_rows(const Grid& g) { return std::max<std::size_t>(1, 16384 / g.n1); }

}  // namespace

double bump_shape(const BumpSpec& bump, double xi1, double xi2, double xi3) {
  const double r = std::abs(xi1 - bump.center) / bump.width;
  if (r >= 1.0) return 0.0;
  double shape = bump.amplitude * std::exp(1.0 - 1.0 / (1.0 - r * r));
  if (bump.transverse != 0.0) {
    const double w = 2.0 * std::numbers::pi * bump.mode;
    shape *= 1.0 + bump.transverse * std::cos(w * xi2) * std::cos(w * xi3);
  }
  return shape;
}

Background profile_background(const ProfileTable& profile, const Grid& grid) {
  Background bg;
  for (auto& v : bg.f) v.assign(grid.row(), 0.0);
  for (std::size_t r = 0; r < grid.row(); ++r) {
    const Index i = static_cast<Index>(r) - static_cast<Index>(Grid::ghost);
    const ProfileSample ps = eval_profile(profile, grid.xi1(i));
    const auto pi = complete_stress(ps.pi11);
    bg.f[V][r] = ps.v;
    bg.f[U1][r] = ps.u1;
    bg.f[P11][r] = pi[0];
    bg.f[P22][r] = pi[1];
    bg.f[P33][r] = pi[2];
    bg.f[P2][r] = ps.pi2;
  }
  return bg;
}

FieldState init_perturbed_shock(const ProfileTable& profile, const Grid& grid,
                                const std::vector<BumpSpec>& bumps) {
  grid.validate();
  for (const BumpSpec& b : bumps) {
    if (!(b.width > 0.0)) throw ConfigError("bump width must be positive");
    if (!(std::abs(b.center) + b.width < 0.5 * grid.L)) {
      throw ConfigError("bump support must lie inside (-L/2, L/2)");
    }
  }
  const Background bg = profile_background(profile, grid);
  FieldState s(grid);
  for (std::size_t k = 0; k < grid.n3; ++k) {
    for (std::size_t j = 0; j < grid.n2; ++j) {
      for (std::size_t r = 0; r < grid.row(); ++r) {
        const Index i = static_cast<Index>(r) - static_cast<Index>(Grid::ghost);
        const std::size_t c = grid.index(i, j, k);
        for (std::size_t q = 0; q < kFieldCount; ++q) s.f[q][c] = bg.f[q][r];
        if (i < 0 || i >= static_cast<Index>(grid.n1)) continue;
        for (const BumpSpec& b : bumps) {
          s.f[b.component][c] += bump_shape(b, grid.xi1(i), grid.xi2(j), grid.xi3(k));
        }
        if (!(s.f[V][c] > 0.0)) {
          std::ostringstream msg;
          msg << "bump makes v non-positive at cell (" << i << "," << j << "," << k << ")";
          throw ConfigError(msg.str());
        }
      }
    }
  }
  return s;
}

FieldState constant_state(const Grid& grid, double v, double u1, double u2, double u3) {
  FieldState s(grid);
  std::fill(s.f[V].begin(), s.f[V].end(), v);
  std::fill(s.f[U1].begin(), s.f[U1].end(), u1);
  std::fill(s.f[U2].begin(), s.f[U2].end(), u2);
  std::fill(s.f[U3].begin(), s.f[U3].end(), u3);
  return s;
}

RelaxSolver::RelaxSolver(const GasModel& model, const ShockData& shock, const Grid& grid,
                         Background background, SolverOptions options)
    : model_(model),
      shock_(shock),
      grid_(grid),
      background_(std::move(background)),
      options_(options),
      k_(grid),
      stage_(grid),
      stress_(grid) {
  model_.validate();
  grid_.validate();
  if (!(options_.cfl > 0.0)) throw ConfigError("CFL number must be positive");
  if (!(options_.hyperdissipation >= 0.0)) throw ConfigError("hyperdissipation must be >= 0");
  if (!grid_.periodic_xi1) {
    for (const auto& f : background_.f) {
      if (f.size() != grid_.row()) throw ConfigError("background does not match the grid");
    }
    if (2 * options_.sponge_cells >= grid_.n1) throw ConfigError("sponge wider than the grid");
  }
  sponge_weight_.resize(options_.sponge_cells);
  for (std::size_t m = 0; m < options_.sponge_cells; ++m) {
    sponge_weight_[m] =
        0.5 * (1.0 + std::cos(std::numbers::pi * static_cast<double>(m) /
                              static_cast<double>(options_.sponge_cells)));
  }
}

void RelaxSolver::apply_boundaries(FieldState& s) const { boundary_pass(s, true); }

void RelaxSolver::fill_ghosts(FieldState& s) const { boundary_pass(s, false); }

void RelaxSolver::boundary_pass(FieldState& s, bool sponge) const {
  const Grid& g = grid_;
  const Index n1 = static_cast<Index>(g.n1);
  const Index gh = static_cast<Index>(Grid::ghost);
  for (std::size_t k = 0; k < g.n3; ++k) {
    for (std::size_t j = 0; j < g.n2; ++j) {
      const std::size_t base = g.index(0, j, k);
      for (std::size_t q = 0; q < kFieldCount; ++q) {
        double* f = s.f[q].data() + base;  // f[i] is physical cell i
        if (g.periodic_xi1) {
          for (Index m = 1; m <= gh; ++m) {
            f[-m] = f[n1 - m];
            f[n1 - 1 + m] = f[m - 1];
          }
          continue;
        }
        const double* b = background_.f[q].data() + gh;
        for (Index m = 1; m <= gh; ++m) {
          f[-m] = b[-m];
          f[n1 - 1 + m] = b[n1 - 1 + m];
        }
        if (!sponge) continue;
        for (std::size_t m = 0; m < sponge_weight_.size(); ++m) {
          const double w = sponge_weight_[m];
          const Index l = static_cast<Index>(m);
          const Index r = n1 - 1 - l;
          f[l] -= w * (f[l] - b[l]);
          f[r] -= w * (f[r] - b[r]);
        }
      }
    }
  }
}

double RelaxSolver::max_speed(const FieldState& s) const {
  if (!(model_.tau > 0.0)) {
    throw ConfigError("frozen speed is unbounded at tau = 0; use the Newtonian solver");
  }
  const Grid& g = grid_;
  const double visc = model_.viscosity_sum();
  double best = 0.0;
  for (std::size_t k = 0; k < g.n3; ++k) {
    for (std::size_t j = 0; j < g.n2; ++j) {
      for (Index i = 0; i < static_cast<Index>(g.n1); ++i) {
        const std::size_t c = g.index(i, j, k);
        const double rho = 1.0 / s.f[V][c];
        const double speed = std::abs(s.f[U1][c] - shock_.sigma) + std::abs(s.f[U2][c]) +
                             std::abs(s.f[U3][c]) +
                             std::sqrt(model_.gamma * std::pow(rho, model_.gamma - 1.0) +
                                       visc / (model_.tau * rho * rho));
        best = std::max(best, speed);
      }
    }
  }
  return best;
}

double RelaxSolver::cfl_dt(const FieldState& s) const {
  return options_.cfl * grid_.min_dx() / max_speed(s);
}

void RelaxSolver::newtonian_stress(const FieldState& s, FieldState& out) const {
  const Grid& g = grid_;
  const double i1 = 0.5 / g.dx1(), i2 = 0.5 / g.dx2(), i3 = 0.5 / g.dx3();
  const bool t2 = g.n2 > 1, t3 = g.n3 > 1;
  parallel_for(
      g.n2 * g.n3,
      [&](std::size_t lo, std::size_t hi) {
        for (std::size_t r = lo; r < hi; ++r) {
          const std::size_t j = r % g.n2, k = r / g.n2;
          const RowOffsets o = row_offsets(g, j, k);
          for (Index i = -1; i <= static_cast<Index>(g.n1); ++i) {
            const std::size_t c = g.index(i, j, k);
            const Stress st = stress_at(s, c, o, model_, i1, i2, i3, t2, t3);
            out.f[P11][c] = st.s11;
            out.f[P22][c] = st.s22;
            out.f[P33][c] = st.s33;
            out.f[P12][c] = st.s12;
            out.f[P13][c] = st.s13;
            out.f[P23][c] = st.s23;
            out.f[P2][c] = st.s2;
          }
        }
      },
      min_rows(g));
}

void RelaxSolver::relax(FieldState& s, double h) const {
  newtonian_stress(s, stress_);
  const Grid& g = grid_;
  const double tau = model_.tau;
  parallel_for(
      g.n2 * g.n3,
      [&](std::size_t lo, std::size_t hi) {
        for (std::size_t r = lo; r < hi; ++r) {
          const std::size_t j = r % g.n2, k = r / g.n2;
          for (Index i = 0; i < static_cast<Index>(g.n1); ++i) {
            const std::size_t c = g.index(i, j, k);
            const double e = tau > 0.0 ? std::exp(-h * s.f[V][c] / tau) : 0.0;
            for (Field q : kStressFields) {
              const double target = stress_.f[q][c];
              s.f[q][c] = target + (s.f[q][c] - target) * e;
            }
          }
        }
      },
      min_rows(g));
}

void RelaxSolver::rhs_impl(const FieldState& s, const FieldState& st, double s_max,
                           bool newtonian, FieldState& out) const {
  const Grid& g = grid_;
  p_.resize(g.size());
  {
    const double* v = s.f[V].data();
    for (std::size_t c = 0; c < g.size(); ++c) p_[c] = std::pow(v[c], -model_.gamma);
  }
  const double sigma = shock_.sigma;
  const double i1 = 0.5 / g.dx1(), i2 = 0.5 / g.dx2(), i3 = 0.5 / g.dx3();
  const double h1 = options_.hyperdissipation * s_max / g.dx1();
  const double h2 = options_.hyperdissipation * s_max / g.dx2();
  const double h3 = options_.hyperdissipation * s_max / g.dx3();
  const bool t2 = g.n2 > 1, t3 = g.n3 > 1;

  parallel_for(
      g.n2 * g.n3,
      [&](std::size_t lo, std::size_t hi) {
        for (std::size_t r = lo; r < hi; ++r) {
          const std::size_t j = r % g.n2, k = r / g.n2;
          const RowOffsets o = row_offsets(g, j, k);
          auto D1 = [&](const double* f, std::size_t c) { return (f[c + 1] - f[c - 1]) * i1; };
          auto D2 = [&](const double* f, std::size_t c) {
            return t2 ? (f[c + o.jp1] - f[c + o.jm1]) * i2 : 0.0;
          };
          auto D3 = [&](const double* f, std::size_t c) {
            return t3 ? (f[c + o.kp1] - f[c + o.km1]) * i3 : 0.0;
          };
          auto hyper = [&](const double* f, std::size_t c) {
            double acc = h1 * (f[c + 2] - 4.0 * f[c + 1] + 6.0 * f[c] - 4.0 * f[c - 1] + f[c - 2]);
            if (t2) {
              acc += h2 * (f[c + o.jp2] - 4.0 * f[c + o.jp1] + 6.0 * f[c] - 4.0 * f[c + o.jm1] +
                           f[c + o.jm2]);
            }
            if (t3) {
              acc += h3 * (f[c + o.kp2] - 4.0 * f[c + o.kp1] + 6.0 * f[c] - 4.0 * f[c + o.km1] +
                           f[c + o.km2]);
            }
            return acc;
          };
          const double* v = s.f[V].data();
          const double* u1 = s.f[U1].data();
          const double* u2 = s.f[U2].data();
          const double* u3 = s.f[U3].data();
          const double* P = p_.data();
          const double* s11 = st.f[P11].data();
          const double* s22 = st.f[P22].data();
          const double* s33 = st.f[P33].data();
          const double* s12 = st.f[P12].data();
          const double* s13 = st.f[P13].data();
          const double* s23 = st.f[P23].data();
          const double* s2 = st.f[P2].data();

          for (Index i = 0; i < static_cast<Index>(g.n1); ++i) {
            const std::size_t c = g.index(i, j, k);
            const double a1 = sigma - u1[c], a2 = -u2[c], a3 = -u3[c];
            auto adv = [&](const double* f) {
              return a1 * D1(f, c) + a2 * D2(f, c) + a3 * D3(f, c);
            };
            const double div = D1(u1, c) + D2(u2, c) + D3(u3, c);
            const double vc = v[c];
            out.f[V][c] = adv(v) + vc * div - hyper(v, c);
            out.f[U1][c] = adv(u1) +
                           vc * (-D1(P, c) + D1(s11, c) + D2(s12, c) + D3(s13, c) + D1(s2, c)) -
                           hyper(u1, c);
            out.f[U2][c] = adv(u2) +
                           vc * (-D2(P, c) + D1(s12, c) + D2(s22, c) + D3(s23, c) + D2(s2, c)) -
                           hyper(u2, c);
            out.f[U3][c] = adv(u3) +
                           vc * (-D3(P, c) + D1(s13, c) + D2(s23, c) + D3(s33, c) + D3(s2, c)) -
                           hyper(u3, c);
            for (Field q : kStressFields) {
              const double* f = s.f[q].data();
              out.f[q][c] = newtonian ? 0.0 : adv(f) - hyper(f, c);
            }
          }
        }
      },
      min_rows(g));
}

void RelaxSolver::transport_rhs(const FieldState& s, double s_max, FieldState& out) const {
  rhs_impl(s, s, s_max, false, out);
}

void RelaxSolver::newtonian_rhs(const FieldState& s, double s_max, FieldState& out) const {
  newtonian_stress(s, stress_);
  rhs_impl(s, stress_, s_max, true, out);
}

FieldState RelaxSolver::time_derivative(const FieldState& s) const {
  if (!(model_.tau > 0.0)) throw ConfigError("time_derivative needs tau > 0");
  FieldState tmp = s;
  fill_ghosts(tmp);
  FieldState out(grid_);
  transport_rhs(tmp, max_speed(tmp), out);
  FieldState target(grid_);
  newtonian_stress(tmp, target);
  const Grid& g = grid_;
  for (std::size_t k = 0; k < g.n3; ++k) {
    for (std::size_t j = 0; j < g.n2; ++j) {
      for (Index i = 0; i < static_cast<Index>(g.n1); ++i) {
        const std::size_t c = g.index(i, j, k);
        const double rate = tmp.f[V][c] / model_.tau;
        for (Field q : kStressFields) out.f[q][c] += (target.f[q][c] - tmp.f[q][c]) * rate;
      }
    }
  }
  out.t = s.t;
  return out;
}

void RelaxSolver::check_state(const FieldState& s) const {
  const Grid& g = grid_;
  for (std::size_t k = 0; k < g.n3; ++k) {
    for (std::size_t j = 0; j < g.n2; ++j) {
      for (Index i = 0; i < static_cast<Index>(g.n1); ++i) {
        const std::size_t c = g.index(i, j, k);
        bool bad = !(s.f[V][c] > 0.0);
        for (std::size_t q = 0; q < kFieldCount && !bad; ++q) bad = !std::isfinite(s.f[q][c]);
        if (bad) {
          std::ostringstream msg;
          msg << "blow-up at cell (" << i << "," << j << "," << k << "), t=" << s.t
              << ": v=" << s.f[V][c];
          throw BlowUpError(msg.str(), static_cast<std::size_t>(i), j, k, s.t);
        }
      }
    }
  }
}

namespace {

void axpy_all(FieldState& out, const FieldState& a, double dt, const FieldState& k,
              std::size_t nq) {
  for (std::size_t q = 0; q < nq; ++q) {
    const std::size_t n = a.f[q].size();
    const double* x = a.f[q].data();
    const double* d = k.f[q].data();
    double* y = out.f[q].data();
    for (std::size_t c = 0; c < n; ++c) y[c] = x[c] + dt * d[c];
  }
}

// s <- s/2 + (stage + dt k)/2
void ssp_combine(FieldState& s, const FieldState& stage, double dt, const FieldState& k,
                 std::size_t nq) {
  for (std::size_t q = 0; q < nq; ++q) {
    const std::size_t n = s.f[q].size();
    double* x = s.f[q].data();
    const double* y = stage.f[q].data();
    const double* d = k.f[q].data();
    for (std::size_t c = 0; c < n; ++c) x[c] = 0.5 * x[c] + 0.5 * (y[c] + dt * d[c]);
  }
}

}  // namespace

void RelaxSolver::step(FieldState& s, double dt) const {
  if (!(dt > 0.0)) throw ConfigError("time step must be positive");
  fill_ghosts(s);
  relax(s, 0.5 * dt);
  fill_ghosts(s);
  const double s_max = max_speed(s);

  transport_rhs(s, s_max, k_);
  axpy_all(stage_, s, dt, k_, kFieldCount);
  fill_ghosts(stage_);
  transport_rhs(stage_, s_max, k_);
  ssp_combine(s, stage_, dt, k_, kFieldCount);
  fill_ghosts(s);

  relax(s, 0.5 * dt);
  apply_boundaries(s);
  s.t += dt;
  check_state(s);
}

void RelaxSolver::step(FieldState& s, ShiftState& shift, double dt) const {
  const double xdot = shift_rate(s, shift);
  step(s, dt);
  advance_shift(shift, xdot, dt);
}

double RelaxSolver::newtonian_dt(const FieldState& s) const {
  const Grid& g = grid_;
  double speed = 0.0;
  double rho_min = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < g.n3; ++k) {
    for (std::size_t j = 0; j < g.n2; ++j) {
      for (Index i = 0; i < static_cast<Index>(g.n1); ++i) {
        const std::size_t c = g.index(i, j, k);
        const double rho = 1.0 / s.f[V][c];
        rho_min = std::min(rho_min, rho);
        speed = std::max(speed, std::abs(s.f[U1][c] - shock_.sigma) + std::abs(s.f[U2][c]) +
                                    std::abs(s.f[U3][c]) +
                                    std::sqrt(model_.gamma * std::pow(rho, model_.gamma - 1.0)));
      }
    }
  }
  const double dx = g.min_dx();
  return std::min(options_.cfl * dx / speed, 0.25 * dx * dx * rho_min / model_.viscosity_sum());
}

void RelaxSolver::newtonian_step(FieldState& s, double dt) const {
  if (!(dt > 0.0)) throw ConfigError("time step must be positive");
  const Grid& g = grid_;
  fill_ghosts(s);
  double s_max = 0.0;
  for (std::size_t k = 0; k < g.n3; ++k) {
    for (std::size_t j = 0; j < g.n2; ++j) {
      for (Index i = 0; i < static_cast<Index>(g.n1); ++i) {
        const std::size_t c = g.index(i, j, k);
        const double rho = 1.0 / s.f[V][c];
        s_max = std::max(s_max, std::abs(s.f[U1][c] - shock_.sigma) + std::abs(s.f[U2][c]) +
                                    std::abs(s.f[U3][c]) +
                                    std::sqrt(model_.gamma * std::pow(rho, model_.gamma - 1.0)));
      }
    }
  }
  const std::size_t nq = std::size_t{U3} + 1;
  newtonian_rhs(s, s_max, k_);
  axpy_all(stage_, s, dt, k_, nq);
  fill_ghosts(stage_);
  newtonian_rhs(stage_, s_max, k_);
  ssp_combine(s, stage_, dt, k_, nq);
  apply_boundaries(s);
  newtonian_stress(s, stress_);
  for (Field q : kStressFields) {
    for (std::size_t kk = 0; kk < g.n3; ++kk) {
      for (std::size_t j = 0; j < g.n2; ++j) {
        for (Index i = -1; i <= static_cast<Index>(g.n1); ++i) {
          const std::size_t c = g.index(i, j, kk);
          s.f[q][c] = stress_.f[q][c];
        }
      }
    }
  }
  s.t += dt;
  check_state(s);
}

}  // namespace relaxshock
