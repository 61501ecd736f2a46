#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "relaxshock/config.hpp"
#include "relaxshock/errors.hpp"
#include "relaxshock/experiment.hpp"
#include "relaxshock/snapshot_io.hpp"

using namespace relaxshock;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("relaxshock_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args, const fs::path& dir) {
  const fs::path log = dir / "cli.log";
  const std::string cmd = std::string(RELAXSHOCK_CLI) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(log)};
}

const char* kSmallRun = R"(# short 1-D run
v_plus=1.1
L=40
N1=256
T_final=2
output_every=0.5
reference_time=1
bump_amplitude=0.02
bump_width=3
)";

}  // namespace

TEST_CASE("config parsing") {
  const RunConfig d = parse_config("");
  CHECK(d.model.gamma == doctest::Approx(5.0 / 3.0));
  CHECK(d.grid.n1 == 2048);
  const RunConfig c = parse_config("tau = 0.02  # relaxation\nN1=512\nbump=false\n\n");
  CHECK(c.model.tau == 0.02);
  CHECK(c.grid.n1 == 512);
  CHECK(!c.bump_enabled);
  CHECK(c.bumps().empty());
  const RunConfig again = parse_config(render_config(c));
  CHECK(render_config(again) == render_config(c));

  auto message = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("gamma=1.4\nbogus=3\n").find("line 2") != std::string::npos);
  CHECK(message("v_plus=0.8").find("not a 2-shock") != std::string::npos);
  CHECK(message("v_plus=3\ntau=0.95").find("admissible") != std::string::npos);
  CHECK(message("N1=abc").find("N1") != std::string::npos);
  CHECK(message("mode=threeD").find("mode") != std::string::npos);
  CHECK_THROWS_AS(parse_config("v_plus=0.8"), AdmissibilityError);
  CHECK(parse_number_list("0.1, 0.01,1e-3") == std::vector<double>{0.1, 0.01, 1e-3});
}

TEST_CASE("snapshot round trip") {
  const fs::path dir = scratch("snap");
  const RunConfig cfg = parse_config(kSmallRun);
  const ProfileRun run = run_profile(cfg);
  write_profile_snapshot(dir / "profile.bin", run.table);
  const Snapshot s = read_snapshot(dir / "profile.bin");
  REQUIRE(s.columns.size() == 5);
  CHECK(s.columns[0] == "xi1");
  CHECK(s.data[1] == run.table.v_s);
  CHECK(s.data[3] == run.table.pi11_s);
  CHECK(s.info.find("gamma=") != std::string::npos);
}

TEST_CASE("stability run outputs and determinism") {
  const fs::path dir = scratch("stab");
  std::ofstream(dir / "run.cfg") << kSmallRun;
  const CliResult a = run_cli("stability --config " + (dir / "run.cfg").string() + " --out " +
                                  (dir / "a").string(),
                              dir);
  const CliResult b = run_cli("stability --config " + (dir / "run.cfg").string() + " --out " +
                                  (dir / "b").string(),
                              dir);
  CHECK(a.code == 0);
  CHECK(b.code == 0);
  for (const char* f : {"timeseries.csv", "profile.bin", "report.txt", "run_0.0000.bin",
                        "run_2.0000.bin"}) {
    CHECK(fs::exists(dir / "a" / f));
  }
  CHECK(slurp(dir / "a" / "timeseries.csv") == slurp(dir / "b" / "timeseries.csv"));
  const Snapshot snap = read_snapshot(dir / "a" / "run_2.0000.bin");
  CHECK(snap.columns.size() == 14);
  CHECK(snap.data[0].size() == 256);
}

TEST_CASE("zero bump keeps the entropy at round-off") {
  RunConfig cfg = parse_config(kSmallRun);
  cfg.bump_enabled = false;
  const StabilityResult r = run_stability(cfg);
  for (const auto& row : r.series) CHECK(std::abs(row.eta_total) < 1e-12);
}

TEST_CASE("initial entropy is quadratic in the bump amplitude") {
  RunConfig cfg = parse_config(kSmallRun);
  cfg.t_final = 0.5;
  const double e1 = run_stability(cfg).summary.initial.eta_total;
  cfg.bump_amplitude *= 2.0;
  const double e2 = run_stability(cfg).summary.initial.eta_total;
  CHECK(e2 / e1 == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("profile command") {
  const fs::path dir = scratch("profile");
  const CliResult ok = run_cli("profile --out " + (dir / "out").string(), dir);
  CHECK(ok.code == 0);
  CHECK(ok.out.find("certificate_ok=1") != std::string::npos);
  CHECK(fs::exists(dir / "out" / "profile.bin"));
  std::ofstream(dir / "bad.cfg") << "v_plus=0.9\n";
  const CliResult bad = run_cli("profile --config " + (dir / "bad.cfg").string(), dir);
  CHECK(bad.code == 2);
  CHECK(bad.out.find("not a 2-shock") != std::string::npos);
}

TEST_CASE("validate command") {
  const fs::path dir = scratch("validate");
  const CliResult a = run_cli("validate --out " + (dir / "a").string(), dir);
  const CliResult b = run_cli("validate --out " + (dir / "b").string(), dir);
  CHECK(a.code == 0);
  CHECK(slurp(dir / "a" / "report.txt") == slurp(dir / "b" / "report.txt"));
  std::ofstream(dir / "corrupt.cfg") << "corrupt_profile=true\n";
  const CliResult c = run_cli("validate --config " + (dir / "corrupt.cfg").string(), dir);
  CHECK(c.code == 4);
  CHECK(c.out.find("failed: profile_split_identity") != std::string::npos);
}

TEST_CASE("relax-limit with a single tau") {
  const fs::path dir = scratch("limit");
  std::ofstream(dir / "limit.cfg") << "L=30\nN1=192\nT_final=0.2\nreference_time=0.1\nbump_width=3\n";
  const CliResult r =
      run_cli("relax-limit --config " + (dir / "limit.cfg").string() + " --tau 0.05 --out " +
                  (dir / "out").string(),
              dir);
  CHECK(r.code == 0);
  const std::string csv = slurp(dir / "out" / "relax_limit.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
  const CliResult bad =
      run_cli("relax-limit --config " + (dir / "limit.cfg").string() + " --tau 0.01,0.1", dir);
  CHECK(bad.code == 2);
}
