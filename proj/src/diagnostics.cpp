#include "relaxshock/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "relaxshock/finite_difference.hpp"
#include "relaxshock/parallel.hpp"

namespace relaxshock {

namespace {

using Index = std::ptrdiff_t;

const ProfileTable& table(const ShiftState& shift) { return *shift.profile; }

// Squared Frobenius distance of the stored Pi1 from the planar profile tensor.
double pi1_distance_sq(const FieldState& s, std::size_t c, double pi11s) {
  const auto t = complete_stress(pi11s);
  const double d11 = s.f[P11][c] - t[0];
  const double d22 = s.f[P22][c] - t[1];
  const double d33 = s.f[P33][c] - t[2];
  const double d12 = s.f[P12][c], d13 = s.f[P13][c], d23 = s.f[P23][c];
  return d11 * d11 + d22 * d22 + d33 * d33 + 2.0 * (d12 * d12 + d13 * d13 + d23 * d23);
}

double eta_at(const FieldState& s, std::size_t c, const ShiftedProfile& sp, std::size_t i,
              const GasModel& m) {
  const double du1 = s.f[U1][c] - sp.u1[i];
  const double u2 = s.f[U2][c], u3 = s.f[U3][c];
  const double dpi2 = s.f[P2][c] - sp.pi2[i];
  return relative_entropy_H(s.f[V][c], sp.v[i], m) + 0.5 * (du1 * du1 + u2 * u2 + u3 * u3) +
         m.tau * pi1_distance_sq(s, c, sp.pi11[i]) / (4.0 * m.mu) +
         m.tau * dpi2 * dpi2 / (2.0 * m.lambda);
}

// Integrates a per-cell quantity: rows over (j, k) in fixed order, then a
// tree sum over xi1 with trapezoid weights.
template <class F>
double integrate(const Grid& g, F&& cell) {
  std::vector<double> col(g.n1);
  const double area = g.dx2() * g.dx3();
  for (std::size_t i = 0; i < g.n1; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < g.n3; ++k) {
      for (std::size_t j = 0; j < g.n2; ++j) {
        acc += cell(i, g.index(static_cast<Index>(i), j, k), j, k);
      }
    }
    col[i] = acc * xi1_weight(g, i) * area;
  }
  return tree_sum(col);
}

}  // namespace

double entropy_H(double v, const GasModel& model) {
  return std::pow(v, 1.0 - model.gamma) / (model.gamma - 1.0);
}

double relative_entropy_H(double v, double w, const GasModel& model) {
  return entropy_H(v, model) - entropy_H(w, model) + pressure(w, model) * (v - w);
}

std::vector<double> relative_entropy_field(const FieldState& fields, const ShiftState& shift) {
  const Grid& g = fields.grid;
  const GasModel& m = table(shift).model;
  const ShiftedProfile sp = sample_shifted_profile(g, shift);
  std::vector<double> out;
  out.reserve(g.cells());
  for (std::size_t k = 0; k < g.n3; ++k) {
    for (std::size_t j = 0; j < g.n2; ++j) {
      for (std::size_t i = 0; i < g.n1; ++i) {
        out.push_back(eta_at(fields, g.index(static_cast<Index>(i), j, k), sp, i, m));
      }
    }
  }
  return out;
}

double weighted_entropy_total(const FieldState& fields, const ShiftState& shift) {
  const Grid& g = fields.grid;
  const GasModel& m = table(shift).model;
  const ShiftedProfile sp = sample_shifted_profile(g, shift);
  return integrate(g, [&](std::size_t i, std::size_t c, std::size_t, std::size_t) {
    return sp.a[i] * eta_at(fields, c, sp, i, m) / fields.f[V][c];
  });
}

GoodTerms good_terms(const FieldState& fields, const ShiftState& shift) {
  const Grid& g = fields.grid;
  const ProfileTable& p = table(shift);
  const GasModel& m = p.model;
  const double sigma_star = p.shock.sigma_star;
  const ShiftedProfile sp = sample_shifted_profile(g, shift);

  // p(v) - p(v^s) on physical cells and the first ghost layer.
  const std::size_t row = g.n1 + 2;
  std::vector<double> ps(row);
  for (std::size_t r = 0; r < row; ++r) {
    const Index i = static_cast<Index>(r) - 1;
    const double vs = (i >= 0 && i < static_cast<Index>(g.n1))
                          ? sp.v[static_cast<std::size_t>(i)]
                          : eval_profile(p, g.xi1(i) - shift.X).v;
    ps[r] = pressure(vs, m);
  }
  std::vector<double> dp(row * g.n2 * g.n3);
  for (std::size_t k = 0; k < g.n3; ++k) {
    for (std::size_t j = 0; j < g.n2; ++j) {
      for (std::size_t r = 0; r < row; ++r) {
        const Index i = static_cast<Index>(r) - 1;
        dp[r + row * (j + g.n2 * k)] = pressure(fields.at(V, i, j, k), m) - ps[r];
      }
    }
  }
  auto DP = [&](Index i, std::size_t j, std::size_t k) {
    return dp[static_cast<std::size_t>(i + 1) + row * (j + g.n2 * k)];
  };

  GoodTerms gt;
  gt.Gs = integrate(g, [&](std::size_t i, std::size_t, std::size_t j, std::size_t k) {
    const double d = DP(static_cast<Index>(i), j, k);
    return sp.dv[i] * d * d;
  });
  gt.G2 = sigma_star * integrate(g, [&](std::size_t i, std::size_t c, std::size_t, std::size_t) {
            const double u2 = fields.f[U2][c], u3 = fields.f[U3][c];
            return sp.da[i] * 0.5 * (u2 * u2 + u3 * u3);
          });
  gt.G3 = 0.5 * sigma_star *
          integrate(g, [&](std::size_t i, std::size_t c, std::size_t j, std::size_t k) {
            const double w =
                fields.f[U1][c] - sp.u1[i] - DP(static_cast<Index>(i), j, k) / sigma_star;
            return sp.da[i] * w * w;
          });
  const double i1 = 0.5 / g.dx1(), i2 = 0.5 / g.dx2(), i3 = 0.5 / g.dx3();
  gt.D = m.viscosity_sum() *
         integrate(g, [&](std::size_t i, std::size_t c, std::size_t j, std::size_t k) {
           const Index ii = static_cast<Index>(i);
           const double g1 = (DP(ii + 1, j, k) - DP(ii - 1, j, k)) * i1;
           double g2 = 0.0, g3 = 0.0;
           if (g.n2 > 1) g2 = (DP(ii, (j + 1) % g.n2, k) - DP(ii, (j + g.n2 - 1) % g.n2, k)) * i2;
           if (g.n3 > 1) g3 = (DP(ii, j, (k + 1) % g.n3) - DP(ii, j, (k + g.n3 - 1) % g.n3)) * i3;
           const double v = fields.f[V][c];
           // gamma p^(1 + 1/gamma) = gamma v^(-gamma - 1)
           const double denom = m.gamma * std::pow(v, -m.gamma - 1.0);
           return sp.a[i] * (g1 * g1 + g2 * g2 + g3 * g3) / denom;
         });
  return gt;
}

std::vector<double> flux_mismatch_F(const FieldState& fields, const ShiftState& shift) {
  const Grid& g = fields.grid;
  const double sigma_star = table(shift).shock.sigma_star;
  const ShiftedProfile sp = sample_shifted_profile(g, shift);
  std::vector<double> out;
  out.reserve(g.cells());
  for (std::size_t k = 0; k < g.n3; ++k) {
    for (std::size_t j = 0; j < g.n2; ++j) {
      for (std::size_t i = 0; i < g.n1; ++i) {
        const std::size_t c = g.index(static_cast<Index>(i), j, k);
        const double v = fields.f[V][c];
        out.push_back(sigma_star / v * (v - sp.v[i]) + (fields.f[U1][c] - sp.u1[i]) / v);
      }
    }
  }
  return out;
}

std::vector<double> flux_mismatch_F_density_form(const FieldState& fields,
                                                 const ShiftState& shift) {
  const Grid& g = fields.grid;
  const double sigma = table(shift).shock.sigma;
  const ShiftedProfile sp = sample_shifted_profile(g, shift);
  std::vector<double> out;
  out.reserve(g.cells());
  for (std::size_t k = 0; k < g.n3; ++k) {
    for (std::size_t j = 0; j < g.n2; ++j) {
      for (std::size_t i = 0; i < g.n1; ++i) {
        const std::size_t c = g.index(static_cast<Index>(i), j, k);
        const double rho = 1.0 / fields.f[V][c];
        const double rhos = 1.0 / sp.v[i];
        out.push_back(-sigma * (rho - rhos) + rho * fields.f[U1][c] - rhos * sp.u1[i]);
      }
    }
  }
  return out;
}

SupNorms perturbation_sup(const FieldState& fields, const ShiftState& shift, std::size_t skip) {
  const Grid& g = fields.grid;
  const ShiftedProfile sp = sample_shifted_profile(g, shift);
  SupNorms s;
  if (2 * skip >= g.n1) return s;
  for (std::size_t k = 0; k < g.n3; ++k) {
    for (std::size_t j = 0; j < g.n2; ++j) {
      for (std::size_t i = skip; i < g.n1 - skip; ++i) {
        const std::size_t c = g.index(static_cast<Index>(i), j, k);
        const double du1 = fields.f[U1][c] - sp.u1[i];
        const double u2 = fields.f[U2][c], u3 = fields.f[U3][c];
        const double dpi2 = fields.f[P2][c] - sp.pi2[i];
        s.v = std::max(s.v, std::abs(fields.f[V][c] - sp.v[i]));
        s.u = std::max(s.u, std::sqrt(du1 * du1 + u2 * u2 + u3 * u3));
        s.pi = std::max(s.pi, std::sqrt(pi1_distance_sq(fields, c, sp.pi11[i]) + dpi2 * dpi2));
      }
    }
  }
  return s;
}

MassBalance interior_mass_balance(const FieldState& fields, double sigma, std::size_t skip) {
  const Grid& g = fields.grid;
  const double area = g.dx2() * g.dx3();
  const Index lo = static_cast<Index>(skip);
  const Index hi = static_cast<Index>(g.n1 - skip);  // one past the last interior cell
  std::vector<double> col(static_cast<std::size_t>(hi - lo));
  double left = 0.0, right = 0.0;
  auto flux = [&](Index i, std::size_t j, std::size_t k) {
    return (fields.at(U1, i, j, k) - sigma) / fields.at(V, i, j, k);
  };
  for (Index i = lo; i < hi; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < g.n3; ++k) {
      for (std::size_t j = 0; j < g.n2; ++j) acc += 1.0 / fields.at(V, i, j, k);
    }
    col[static_cast<std::size_t>(i - lo)] = acc * g.dx1() * area;
  }
  for (std::size_t k = 0; k < g.n3; ++k) {
    for (std::size_t j = 0; j < g.n2; ++j) {
      left += 0.5 * (flux(lo - 1, j, k) + flux(lo, j, k));
      right += 0.5 * (flux(hi - 1, j, k) + flux(hi, j, k));
    }
  }
  return {tree_sum(col), (left - right) * area};
}

MassTracker::MassTracker(const FieldState& initial, double sigma, std::size_t skip)
    : sigma_(sigma), skip_(skip) {
  const MassBalance b = interior_mass_balance(initial, sigma, skip);
  mass0_ = b.mass;
  mass_ = b.mass;
  last_inflow_ = b.net_inflow;
}

void MassTracker::record(const FieldState& fields, double dt) {
  const MassBalance b = interior_mass_balance(fields, sigma_, skip_);
  integrated_ += 0.5 * dt * (last_inflow_ + b.net_inflow);
  last_inflow_ = b.net_inflow;
  mass_ = b.mass;
}

double MassTracker::residual() const { return (mass_ - mass0_ - integrated_) / mass0_; }

EntropyReport evaluate_report(const FieldState& fields, const ShiftState& shift,
                              std::size_t skip, double mass_residual) {
  EntropyReport r;
  r.t = fields.t;
  r.eta_total = weighted_entropy_total(fields, shift);
  const GoodTerms gt = good_terms(fields, shift);
  r.Gs = gt.Gs;
  r.G2 = gt.G2;
  r.G3 = gt.G3;
  r.D = gt.D;
  const SupNorms s = perturbation_sup(fields, shift, skip);
  r.sup_v = s.v;
  r.sup_u = s.u;
  r.sup_pi = s.pi;
  r.X = shift.X;
  r.Xdot = shift.Xdot;
  r.xdot_abs = std::abs(shift.Xdot);
  r.mass_residual = mass_residual;
  return r;
}

PoincareResult poincare_check(const std::vector<double>& f, std::size_t n1, std::size_t n2,
                              std::size_t n3) {
  PoincareResult res;
  const std::size_t n = n1 * n2 * n3;
  if (n == 0 || f.size() != n || n1 < 5) return res;
  const double h1 = 1.0 / static_cast<double>(n1);
  const double h2 = 1.0 / static_cast<double>(n2);
  const double h3 = 1.0 / static_cast<double>(n3);
  const double cell = h1 * h2 * h3;
  auto at = [&](std::size_t i, std::size_t j, std::size_t k) { return f[i + n1 * (j + n2 * k)]; };

  const double mean = tree_sum(f) / static_cast<double>(n);

  // One-sided five-point weights for the two cells nearest each end.
  std::vector<double> y(n1);
  for (std::size_t i = 0; i < n1; ++i) y[i] = (static_cast<double>(i) + 0.5) * h1;
  std::vector<std::vector<double>> edge(4);
  for (std::size_t e = 0; e < 2; ++e) {
    edge[e] = fd_weights(y[e], std::span<const double>(y).subspan(0, 5), 1);
    edge[2 + e] = fd_weights(y[n1 - 2 + e], std::span<const double>(y).subspan(n1 - 5, 5), 1);
  }
  auto d_periodic = [](double fm2, double fm1, double fp1, double fp2, double h) {
    return (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
  };

  std::vector<double> lhs_col(n1), rhs_col(n1);
  const double transverse = 1.0 / (16.0 * std::numbers::pi * std::numbers::pi);
  for (std::size_t i = 0; i < n1; ++i) {
    const double w = y[i] * (1.0 - y[i]);
    double l = 0.0, r = 0.0;
    for (std::size_t k = 0; k < n3; ++k) {
      for (std::size_t j = 0; j < n2; ++j) {
        const double fc = at(i, j, k);
        double d1 = 0.0;
        if (i >= 2 && i + 2 < n1) {
          d1 = d_periodic(at(i - 2, j, k), at(i - 1, j, k), at(i + 1, j, k), at(i + 2, j, k), h1);
        } else {
          const bool low = i < 2;
          const auto& wts = low ? edge[i] : edge[2 + (i - (n1 - 2))];
          const std::size_t start = low ? 0 : n1 - 5;
          for (std::size_t s = 0; s < 5; ++s) d1 += wts[s] * at(start + s, j, k);
        }
        double d2 = 0.0, d3 = 0.0;
        if (n2 > 1) {
          d2 = d_periodic(at(i, (j + n2 - 2) % n2, k), at(i, (j + n2 - 1) % n2, k),
                          at(i, (j + 1) % n2, k), at(i, (j + 2) % n2, k), h2);
        }
        if (n3 > 1) {
          d3 = d_periodic(at(i, j, (k + n3 - 2) % n3), at(i, j, (k + n3 - 1) % n3),
                          at(i, j, (k + 1) % n3), at(i, j, (k + 2) % n3), h3);
        }
        l += (fc - mean) * (fc - mean);
        r += 0.5 * w * d1 * d1 + transverse * (d2 * d2 + d3 * d3) / w;
      }
    }
    lhs_col[i] = l * cell;
    rhs_col[i] = r * cell;
  }
  res.lhs = tree_sum(lhs_col);
  res.rhs = tree_sum(rhs_col);
  res.holds = res.lhs <= res.rhs * (1.0 + 1e-6) + 1e-12;
  return res;
}

std::vector<double> random_band_limited(std::uint64_t seed, std::size_t n1, std::size_t n2,
                                        std::size_t n3) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  constexpr int kMax = 3;
  constexpr int kModes = 2;
  const double two_pi = 2.0 * std::numbers::pi;
  // g_k(y2, y3) = sum_{m,n} (c cos + s sin)(2 pi (m y2 + n y3)); f = sum_k cos(k pi y1) g_k.
  std::vector<std::vector<double>> g(kMax + 1, std::vector<double>(n2 * n3, 0.0));
  for (int k = 0; k <= kMax; ++k) {
    for (int m = -kModes; m <= kModes; ++m) {
      for (int n = -kModes; n <= kModes; ++n) {
        const double c = coef(rng);
        const double s = coef(rng);
        for (std::size_t b = 0; b < n3; ++b) {
          for (std::size_t a = 0; a < n2; ++a) {
            const double y2 = (static_cast<double>(a) + 0.5) / static_cast<double>(n2);
            const double y3 = (static_cast<double>(b) + 0.5) / static_cast<double>(n3);
            const double phase = two_pi * (m * y2 + n * y3);
            g[k][a + n2 * b] += c * std::cos(phase) + s * std::sin(phase);
          }
        }
      }
    }
  }
  std::vector<double> f(n1 * n2 * n3, 0.0);
  for (std::size_t i = 0; i < n1; ++i) {
    const double y1 = (static_cast<double>(i) + 0.5) / static_cast<double>(n1);
    double basis[kMax + 1];
    for (int k = 0; k <= kMax; ++k) basis[k] = std::cos(k * std::numbers::pi * y1);
    for (std::size_t t = 0; t < n2 * n3; ++t) {
      double acc = 0.0;
      for (int k = 0; k <= kMax; ++k) acc += basis[k] * g[k][t];
      f[i + n1 * t] = acc;
    }
  }
  return f;
}

}  // namespace relaxshock
