#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "relaxshock/fields.hpp"
#include "relaxshock/gas_dynamics.hpp"
#include "relaxshock/relax_solver.hpp"
#include "relaxshock/shock_profile.hpp"

namespace relaxshock {

/// Flat key=value run description. Bump amplitude is a fraction of
/// v_plus - v_minus; times are in moving-frame units.
struct RunConfig {
  GasModel model;
  double v_minus = 1.0;
  double u1_minus = 0.0;
  double v_plus = 1.2;

  Grid grid;
  SolverOptions solver;

  double t_final = 200.0;
  double output_every = 1.0;    // diagnostics cadence (time units)
  double snapshot_every = 0.0;  // 0: initial and final snapshots only
  double reference_time = 10.0;  // decay ratios compare t_final against this time

  bool bump_enabled = true;
  Field bump_component = V;
  double bump_amplitude = 0.01;
  double bump_width = 2.0;
  double bump_center = 0.0;
  double bump_transverse = 0.0;
  int bump_mode = 1;

  ProfileOptions profile;
  std::optional<double> nu;
  std::uint64_t seed = 12345;

  std::vector<double> tau_list = {1e-1, 1e-2, 1e-3};
  int refine_factor = 2;
  bool corrupt_profile = false;  // fault injection for the validate command

  ShockData shock() const { return make_shock(v_minus, u1_minus, v_plus, model); }
  std::vector<BumpSpec> bumps() const;

  /// Checks every precondition (admissibility, tau bound, grid, bump).
  void validate() const;
};

/// Parses key=value text ('#' starts a comment); unknown keys and malformed
/// values raise ConfigError naming the line. Validates the result.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// Comma separated list of numbers.
std::vector<double> parse_number_list(const std::string& text);

/// Canonical key=value rendering (17 significant digits).
std::string render_config(const RunConfig& cfg);

}  // namespace relaxshock
