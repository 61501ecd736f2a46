#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "relaxshock/fields.hpp"
#include "relaxshock/gas_dynamics.hpp"
#include "relaxshock/shift_weight.hpp"

namespace relaxshock {

/// H(v) = v^(1 - gamma) / (gamma - 1), so that H' = -p.
double entropy_H(double v, const GasModel& model);

/// Relative entropy H(v | w) = H(v) - H(w) + p(w) (v - w) >= 0.
double relative_entropy_H(double v, double w, const GasModel& model);

/// Pointwise eta against the profile shifted by shift.X, on physical cells
/// in flat (i fastest, then j, then k) order.
std::vector<double> relative_entropy_field(const FieldState& fields, const ShiftState& shift);

/// Trapezoid quadrature of a^{-X} rho eta.
double weighted_entropy_total(const FieldState& fields, const ShiftState& shift);

struct GoodTerms {
  double Gs = 0.0;
  double G2 = 0.0;
  double G3 = 0.0;
  double D = 0.0;
};

/// Needs filled ghost cells (the D term differentiates across the ends).
GoodTerms good_terms(const FieldState& fields, const ShiftState& shift);

/// F = (sigma_*/v)(v - v^s) + (u1 - u1^s)/v on physical cells.
std::vector<double> flux_mismatch_F(const FieldState& fields, const ShiftState& shift);
/// Same quantity in the density form -sigma(rho - rho^s) + rho u1 - rho^s u1^s.
std::vector<double> flux_mismatch_F_density_form(const FieldState& fields,
                                                 const ShiftState& shift);

struct SupNorms {
  double v = 0.0;
  double u = 0.0;
  double pi = 0.0;
};

/// Sup-norm distance to the shifted profile, skipping `skip` cells at each
/// xi1 end (the sponge).
SupNorms perturbation_sup(const FieldState& fields, const ShiftState& shift, std::size_t skip);

/// Mass of rho over physical cells i in [skip, n1 - skip), and the flux
/// sum_in - sum_out of rho (u1 - sigma) through the two interior faces.
struct MassBalance {
  double mass = 0.0;
  double net_inflow = 0.0;
};
MassBalance interior_mass_balance(const FieldState& fields, double sigma, std::size_t skip);

/// Relative drift (M(t) - M(0) - int_0^t inflow dt) / M(0), with the
/// inflow integrated by the trapezoid rule across recorded steps.
class MassTracker {
 public:
  MassTracker(const FieldState& initial, double sigma, std::size_t skip);
  void record(const FieldState& fields, double dt);
  double residual() const;

 private:
  double sigma_;
  std::size_t skip_;
  double mass0_;
  double last_inflow_;
  double integrated_ = 0.0;
  double mass_;
};

struct EntropyReport {
  double t = 0.0;
  double eta_total = 0.0;
  double Gs = 0.0;
  double G2 = 0.0;
  double G3 = 0.0;
  double D = 0.0;
  double sup_v = 0.0;
  double sup_u = 0.0;
  double sup_pi = 0.0;
  double X = 0.0;
  double Xdot = 0.0;
  double xdot_abs = 0.0;
  double mass_residual = 0.0;
};

EntropyReport evaluate_report(const FieldState& fields, const ShiftState& shift,
                              std::size_t skip, double mass_residual);

struct PoincareResult {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// Checks the weighted Poincare inequality on (0,1) x T^2 for samples of f
/// at midpoint cells (index i + n1 (j + n2 k)). Derivatives are fourth-order
/// finite differences; the singular weight is integrated by the midpoint rule.
PoincareResult poincare_check(const std::vector<double>& f, std::size_t n1, std::size_t n2,
                              std::size_t n3);

/// Seeded smooth test function on (0,1) x T^2 sampled at midpoint cells:
/// sum over k <= 3 and |m|, |n| <= 2 of random coefficients times
/// cos(k pi y1) and the transverse Fourier modes.
std::vector<double> random_band_limited(std::uint64_t seed, std::size_t n1, std::size_t n2,
                                        std::size_t n3);

}  // namespace relaxshock
