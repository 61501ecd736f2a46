#include "relaxshock/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "relaxshock/errors.hpp"

namespace relaxshock {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& value) {
  double out = 0.0;
  const char* first = value.data();
  const char* last = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last || !std::isfinite(out)) {
    throw ConfigError("invalid number for '" + key + "': '" + value + "'");
  }
  return out;
}

std::size_t to_count(const std::string& key, const std::string& value) {
  const double d = to_double(key, value);
  if (d < 0.0 || d != std::floor(d)) {
    throw ConfigError("'" + key + "' must be a non-negative integer, got '" + value + "'");
  }
  return static_cast<std::size_t>(d);
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("'" + key + "' must be true or false, got '" + value + "'");
}

Field to_field(const std::string& value) {
  for (std::size_t q = 0; q < kFieldCount; ++q) {
    if (kFieldNames[q] == value) return static_cast<Field>(q);
  }
  throw ConfigError("unknown bump component '" + value + "'");
}

std::string fmt(double x) {
  std::ostringstream o;
  o.precision(17);
  o << x;
  return o.str();
}

}  // namespace

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(to_double("tau list", item));
  }
  if (out.empty()) throw ConfigError("empty number list");
  return out;
}

std::vector<BumpSpec> RunConfig::bumps() const {
  if (!bump_enabled || bump_amplitude == 0.0) return {};
  BumpSpec b;
  b.component = bump_component;
  b.amplitude = bump_amplitude * (v_plus - v_minus);
  b.width = bump_width;
  b.center = bump_center;
  b.transverse = bump_transverse;
  b.mode = bump_mode;
  return {b};
}

void RunConfig::validate() const {
  model.validate();
  if (!(v_minus > 0.0)) throw ConfigError("v_minus must be positive");
  if (!(v_plus > v_minus)) {
    throw AdmissibilityError("not a 2-shock: v_plus must exceed v_minus");
  }
  const ShockData s = shock();
  const TauBound bound = tau_admissible_max(s, model);
  if (model.tau > bound.tau_max) {
    std::ostringstream msg;
    msg << "tau=" << model.tau << " exceeds the admissible bound " << bound.tau_max;
    throw AdmissibilityError(msg.str());
  }
  for (double t : tau_list) {
    if (!(t > 0.0)) throw ConfigError("tau_list entries must be positive");
    if (t > bound.tau_max) {
      std::ostringstream msg;
      msg << "tau_list entry " << t << " exceeds the admissible bound " << bound.tau_max;
      throw AdmissibilityError(msg.str());
    }
  }
  for (std::size_t i = 1; i < tau_list.size(); ++i) {
    if (!(tau_list[i] < tau_list[i - 1])) throw ConfigError("tau_list must be strictly descending");
  }
  grid.validate();
  if (!(solver.cfl > 0.0 && solver.cfl <= 1.0)) throw ConfigError("cfl must lie in (0, 1]");
  if (!grid.periodic_xi1 && 4 * solver.sponge_cells >= grid.n1) {
    throw ConfigError("sponge_cells too large for N1");
  }
  if (!(t_final > 0.0)) throw ConfigError("T_final must be positive");
  if (!(output_every > 0.0)) throw ConfigError("output_every must be positive");
  if (!(snapshot_every >= 0.0)) throw ConfigError("snapshot_every must be >= 0");
  if (!(reference_time >= 0.0 && reference_time <= t_final)) {
    throw ConfigError("reference_time must lie in [0, T_final]");
  }
  if (refine_factor < 2) throw ConfigError("refine_factor must be at least 2");
  if (!(profile.tol > 0.0)) throw ConfigError("profile_tol must be positive");
  if (!(profile.tail_eps > 0.0 && profile.tail_eps < 0.1)) {
    throw ConfigError("tail_eps must lie in (0, 0.1)");
  }
  if (bump_enabled) {
    if (!(bump_width > 0.0)) throw ConfigError("bump_width must be positive");
    if (!(std::abs(bump_center) + bump_width < 0.5 * grid.L)) {
      throw ConfigError("bump support must lie inside (-L/2, L/2)");
    }
    if (bump_component == V && bump_amplitude * (v_plus - v_minus) <= -v_minus) {
      throw ConfigError("bump amplitude would make v non-positive");
    }
  }
  if (nu) {
    const double d = s.delta;
    if (!(*nu > d && *nu <= std::sqrt(d) * (1.0 + 1e-12))) {
      throw ConfigError("nu must satisfy delta < nu <= sqrt(delta)");
    }
  }
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::optional<std::string> mode;

  using Setter = std::function<void(const std::string&, const std::string&)>;
  const std::map<std::string, Setter> setters = {
      {"gamma", [&](auto& k, auto& v) { cfg.model.gamma = to_double(k, v); }},
      {"mu", [&](auto& k, auto& v) { cfg.model.mu = to_double(k, v); }},
      {"lambda", [&](auto& k, auto& v) { cfg.model.lambda = to_double(k, v); }},
      {"tau", [&](auto& k, auto& v) { cfg.model.tau = to_double(k, v); }},
      {"v_minus", [&](auto& k, auto& v) { cfg.v_minus = to_double(k, v); }},
      {"u1_minus", [&](auto& k, auto& v) { cfg.u1_minus = to_double(k, v); }},
      {"v_plus", [&](auto& k, auto& v) { cfg.v_plus = to_double(k, v); }},
      {"L", [&](auto& k, auto& v) { cfg.grid.L = to_double(k, v); }},
      {"N1", [&](auto& k, auto& v) { cfg.grid.n1 = to_count(k, v); }},
      {"N2", [&](auto& k, auto& v) { cfg.grid.n2 = to_count(k, v); }},
      {"N3", [&](auto& k, auto& v) { cfg.grid.n3 = to_count(k, v); }},
      {"mode", [&](auto&, auto& v) { mode = v; }},
      {"periodic_xi1", [&](auto& k, auto& v) { cfg.grid.periodic_xi1 = to_bool(k, v); }},
      {"cfl", [&](auto& k, auto& v) { cfg.solver.cfl = to_double(k, v); }},
      {"hyperdissipation",
       [&](auto& k, auto& v) { cfg.solver.hyperdissipation = to_double(k, v); }},
      {"sponge_cells", [&](auto& k, auto& v) { cfg.solver.sponge_cells = to_count(k, v); }},
      {"T_final", [&](auto& k, auto& v) { cfg.t_final = to_double(k, v); }},
      {"output_every", [&](auto& k, auto& v) { cfg.output_every = to_double(k, v); }},
      {"snapshot_every", [&](auto& k, auto& v) { cfg.snapshot_every = to_double(k, v); }},
      {"reference_time", [&](auto& k, auto& v) { cfg.reference_time = to_double(k, v); }},
      {"bump", [&](auto& k, auto& v) { cfg.bump_enabled = to_bool(k, v); }},
      {"bump_component", [&](auto&, auto& v) { cfg.bump_component = to_field(v); }},
      {"bump_amplitude", [&](auto& k, auto& v) { cfg.bump_amplitude = to_double(k, v); }},
      {"bump_width", [&](auto& k, auto& v) { cfg.bump_width = to_double(k, v); }},
      {"bump_center", [&](auto& k, auto& v) { cfg.bump_center = to_double(k, v); }},
      {"bump_transverse", [&](auto& k, auto& v) { cfg.bump_transverse = to_double(k, v); }},
      {"bump_mode",
       [&](auto& k, auto& v) { cfg.bump_mode = static_cast<int>(to_count(k, v)); }},
      {"profile_tol", [&](auto& k, auto& v) { cfg.profile.tol = to_double(k, v); }},
      {"tail_eps", [&](auto& k, auto& v) { cfg.profile.tail_eps = to_double(k, v); }},
      {"nu", [&](auto& k, auto& v) { cfg.nu = to_double(k, v); }},
      {"seed", [&](auto& k, auto& v) { cfg.seed = to_count(k, v); }},
      {"tau_list", [&](auto&, auto& v) { cfg.tau_list = parse_number_list(v); }},
      {"refine_factor",
       [&](auto& k, auto& v) { cfg.refine_factor = static_cast<int>(to_count(k, v)); }},
      {"corrupt_profile", [&](auto& k, auto& v) { cfg.corrupt_profile = to_bool(k, v); }},
  };

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) {
      throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    it->second(key, value);
  }

  if (mode) {
    const bool one = cfg.grid.n2 == 1 && cfg.grid.n3 == 1;
    if (*mode == "oneD") {
      if (!one) throw ConfigError("mode=oneD requires N2 = N3 = 1");
    } else if (*mode == "threeD") {
      if (one) throw ConfigError("mode=threeD requires N2 > 1 or N3 > 1");
    } else {
      throw ConfigError("mode must be oneD or threeD");
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::string render_config(const RunConfig& c) {
  std::ostringstream o;
  o << "gamma=" << fmt(c.model.gamma) << "\nmu=" << fmt(c.model.mu)
    << "\nlambda=" << fmt(c.model.lambda) << "\ntau=" << fmt(c.model.tau)
    << "\nv_minus=" << fmt(c.v_minus) << "\nu1_minus=" << fmt(c.u1_minus)
    << "\nv_plus=" << fmt(c.v_plus) << "\nL=" << fmt(c.grid.L) << "\nN1=" << c.grid.n1
    << "\nN2=" << c.grid.n2 << "\nN3=" << c.grid.n3
    << "\nperiodic_xi1=" << (c.grid.periodic_xi1 ? "true" : "false")
    << "\ncfl=" << fmt(c.solver.cfl) << "\nhyperdissipation=" << fmt(c.solver.hyperdissipation)
    << "\nsponge_cells=" << c.solver.sponge_cells << "\nT_final=" << fmt(c.t_final)
    << "\noutput_every=" << fmt(c.output_every) << "\nsnapshot_every=" << fmt(c.snapshot_every)
    << "\nreference_time=" << fmt(c.reference_time)
    << "\nbump=" << (c.bump_enabled ? "true" : "false")
    << "\nbump_component=" << kFieldNames[c.bump_component]
    << "\nbump_amplitude=" << fmt(c.bump_amplitude) << "\nbump_width=" << fmt(c.bump_width)
    << "\nbump_center=" << fmt(c.bump_center) << "\nbump_transverse=" << fmt(c.bump_transverse)
    << "\nbump_mode=" << c.bump_mode << "\nprofile_tol=" << fmt(c.profile.tol)
    << "\ntail_eps=" << fmt(c.profile.tail_eps) << "\n";
  if (c.nu) o << "nu=" << fmt(*c.nu) << "\n";
  o << "seed=" << c.seed << "\ntau_list=";
  for (std::size_t i = 0; i < c.tau_list.size(); ++i) o << (i ? "," : "") << fmt(c.tau_list[i]);
  o << "\nrefine_factor=" << c.refine_factor
    << "\ncorrupt_profile=" << (c.corrupt_profile ? "true" : "false") << "\n";
  return o.str();
}

}  // namespace relaxshock
