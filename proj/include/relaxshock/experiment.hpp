#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "relaxshock/config.hpp"
#include "relaxshock/diagnostics.hpp"
#include "relaxshock/fields.hpp"
#include "relaxshock/shock_profile.hpp"

namespace relaxshock {

using OutDir = std::optional<std::filesystem::path>;

struct ProfileRun {
  ProfileTable table;
  ProfileCertificate certificate;
  TauBound tau_bound;
  RankineHugoniotResiduals rh;
  double width = 0.0;
};

ProfileRun run_profile(const RunConfig& cfg);

struct StabilitySummary {
  EntropyReport initial, reference, final;
  double eta_ratio = 0.0;    // eta_total(T) / eta_total(t_ref)
  double sup_v_ratio = 0.0;
  double sup_u_ratio = 0.0;
  double G2_ratio = 0.0;
  double xdot_final_over_max = 0.0;  // |Xdot(T)| / running max |Xdot|
  double max_abs_xdot = 0.0;
  double xdot_sup_median = 0.0;      // median over rows of |Xdot| / sup_v
  double xdot_sup_max = 0.0;
  double traceless_max = 0.0;
  double max_abs_mass_residual = 0.0;
  double init_l2_v = 0.0;  // perturbation norms of the initial data
  double init_sup_v = 0.0;
  std::size_t steps = 0;
};

struct StabilityResult {
  std::vector<EntropyReport> series;
  StabilitySummary summary;
};

/// Perturbed-shock run with shift tracking. With an output directory it
/// writes timeseries.csv, profile.bin, run_<t>.bin snapshots and report.txt.
StabilityResult run_stability(const RunConfig& cfg, const OutDir& out = std::nullopt);

struct RelaxLimitRow {
  double tau = 0.0;
  double E = 0.0;       // L2 distance of (v, u) to the Newtonian run at T_final
  double S = 0.0;       // L2 distance of Pi1 from the Newtonian closure of its own u
  double E_fine = 0.0;  // same on the refined grid
  double S_fine = 0.0;
  std::size_t steps = 0;
};

struct RelaxLimitResult {
  std::vector<RelaxLimitRow> rows;
  bool E_decreasing = false;
  bool S_decreasing = false;
  double max_refinement_change = 0.0;  // max over tau of |E_fine - E|
  double min_gap = 0.0;                // min over consecutive tau of |E_i - E_{i+1}|
};

/// Relaxed runs for each tau (descending) against one Newtonian run, all
/// from the tau = 0 profile plus the configured bump with Pi0 = S_h(u0).
RelaxLimitResult run_relax_limit(const RunConfig& cfg, const std::vector<double>& taus,
                                 const OutDir& out = std::nullopt);

struct ValidationCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

std::vector<ValidationCheck> run_validation(const RunConfig& cfg);

/// Command entry points: print a summary, write outputs, return the exit code.
int cmd_profile(const RunConfig& cfg, const OutDir& out);
int cmd_stability(const RunConfig& cfg, const OutDir& out);
int cmd_relax_limit(const RunConfig& cfg, const std::vector<double>& taus, const OutDir& out);
int cmd_validate(const RunConfig& cfg, const OutDir& out);

}  // namespace relaxshock
