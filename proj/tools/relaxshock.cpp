#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "relaxshock/config.hpp"
#include "relaxshock/errors.hpp"
#include "relaxshock/experiment.hpp"
#include "relaxshock/snapshot_io.hpp"

namespace rs = relaxshock;

int main(int argc, char** argv) {
  CLI::App app{"Relaxed compressible Navier-Stokes shock experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string tau_text;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key=value configuration file")
        ->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory");
  };
  CLI::App* profile = app.add_subcommand("profile", "solve and certify the shock profile");
  CLI::App* stability = app.add_subcommand("stability", "perturbed-shock run with shift tracking");
  CLI::App* limit = app.add_subcommand("relax-limit", "relaxed vs Newtonian sweep over tau");
  CLI::App* validate = app.add_subcommand("validate", "run the invariant suite");
  for (CLI::App* sub : {profile, stability, limit, validate}) add_common(sub);
  limit->add_option("--tau", tau_text, "descending comma separated relaxation times");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(rs::ExitCode::config);
  }

  try {
    const rs::RunConfig cfg = config_path.empty() ? rs::parse_config("") : rs::load_config(config_path);
    const rs::OutDir out = out_dir.empty() ? rs::OutDir{} : rs::OutDir{out_dir};
    if (*profile) return rs::cmd_profile(cfg, out);
    if (*stability || *limit) {
      const double width = rs::characteristic_width(cfg.shock(), cfg.model);
      if (!(cfg.grid.L > 20.0 * width)) {
        std::cerr << "warning: L=" << cfg.grid.L << " is not above 20 profile widths ("
                  << 20.0 * width << "); sponge reflections may reach the diagnostics\n";
      }
    }
    if (*stability) return rs::cmd_stability(cfg, out);
    if (*limit) {
      const auto taus = tau_text.empty() ? cfg.tau_list : rs::parse_number_list(tau_text);
      return rs::cmd_relax_limit(cfg, taus, out);
    }
    return rs::cmd_validate(cfg, out);
  } catch (const rs::BlowUpError& e) {
    std::cerr << "error: " << e.what() << " at t=" << rs::format_double(e.time()) << " cell (" << e.i()
              << ", " << e.j() << ", " << e.k() << ")\n";
    return static_cast<int>(e.exit_code());
  } catch (const rs::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.exit_code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(rs::ExitCode::blow_up);
  }
}
