// End-to-end checks of the installed command line: exit codes, diagnostics,
// determinism. The binary path arrives via the GEDANKEN_CLI environment
// variable set by CTest.
#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

std::string cli_path() {
  const char* env = std::getenv("GEDANKEN_CLI");
  REQUIRE_MESSAGE(env != nullptr, "GEDANKEN_CLI must point at the binary");
  return env;
}

RunResult run_cli(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  RunResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (std::fgets(buf.data(), static_cast<int>(buf.size()), pipe)) {
    result.output += buf.data();
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::filesystem::path write_temp_config(const std::string& name,
                                        const std::string& text) {
  const auto dir = std::filesystem::temp_directory_path() / "gedanken_cli_tests";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream out(path);
  out << text;
  return path;
}

const char* kMinimalEm =
    "scenario.field_kind = em\n"
    "scenario.q_A = 1.0\n"
    "scenario.d = 1.0\n"
    "scenario.D = 1000\n"
    "scenario.T_A = 500\n"
    "scenario.T_B = 500\n"
    "basis.mode_count = 512\n"
    "audit.trials = 100\n"
    "output.format = json\n";

}  // namespace

TEST_CASE("report: coherent regime on a minimal config") {
  const auto cfg = write_temp_config("minimal.cfg", kMinimalEm);
  const RunResult r = run_cli("report " + cfg.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("BobBlind_AliceCoherent") != std::string::npos);
  // d_alice must come out tiny for an adiabatic recombination.
  const auto pos = r.output.find("\"d_alice\":");
  REQUIRE(pos != std::string::npos);
  const double d_alice = std::stod(r.output.substr(pos + 10));
  CHECK(d_alice < 0.01);
}

TEST_CASE("report: protocol violation is reported, not judged") {
  const auto cfg = write_temp_config("violated.cfg", kMinimalEm);
  const RunResult r =
      run_cli("report " + cfg.string() + " --set scenario.T_B=2000");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("ProtocolViolated") != std::string::npos);
}

TEST_CASE("config errors exit with 2 and a precise location") {
  const auto cfg = write_temp_config(
      "broken.cfg", std::string(kMinimalEm) + "scenario.oops = 1\n");
  const RunResult r = run_cli("report " + cfg.string());
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("broken.cfg:10:1") != std::string::npos);
  CHECK(r.output.find("unknown key") != std::string::npos);
}

TEST_CASE("resolution failures exit with 3") {
  const auto cfg = write_temp_config("lowres.cfg", kMinimalEm);
  const RunResult r = run_cli("report " + cfg.string() +
                              " --set worldline.samples_per_ramp=32");
  CHECK(r.exit_code == 3);
}

TEST_CASE("audit: empty audit rejected, fixed seed reproducible") {
  const auto cfg = write_temp_config("audit.cfg", kMinimalEm);
  const RunResult empty =
      run_cli("audit " + cfg.string() + " --set audit.trials=0");
  CHECK(empty.exit_code == 2);

  const std::string args = "audit " + cfg.string() +
                           " --set audit.trials=400 --set audit.seed=11";
  const RunResult a = run_cli(args);
  const RunResult b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  CHECK(a.output.find("\"pass\": true") != std::string::npos);
}

TEST_CASE("sweep: byte-identical CSV across runs and worker counts") {
  const std::string cfg_text = std::string(kMinimalEm) +
                               "sweep.axis1 = T_A\n"
                               "sweep.min1 = 10\n"
                               "sweep.max1 = 100\n"
                               "sweep.count1 = 5\n"
                               "sweep.outputs = d_alice, n_entangling, snr\n";
  const auto cfg = write_temp_config("sweep.cfg", cfg_text);
  const std::string args =
      "sweep " + cfg.string() + " --format csv --workers 2";
  const RunResult a = run_cli(args);
  const RunResult b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  CHECK(a.output.find("T_A,d_alice,n_entangling,snr_whichpath,error") !=
        std::string::npos);
}

TEST_CASE("regime-map: needs two axes and emits the classification grid") {
  const std::string cfg_text = std::string(kMinimalEm) +
                               "sweep.axis1 = d\n"
                               "sweep.scale1 = linear\n"
                               "sweep.min1 = 0.5\n"
                               "sweep.max1 = 2.0\n"
                               "sweep.count1 = 3\n"
                               "sweep.axis2 = T_B\n"
                               "sweep.min2 = 100\n"
                               "sweep.max2 = 900\n"
                               "sweep.count2 = 3\n";
  const auto cfg = write_temp_config("map.cfg", cfg_text);
  const RunResult r = run_cli("regime-map " + cfg.string() + " --format csv");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("d,T_B,snr_whichpath,bob_can_know,alice_decoheres,"
                      "narrative,error") != std::string::npos);
  CHECK(r.output.find("BobBlind_AliceCoherent") != std::string::npos);

  const std::string one_axis = std::string(kMinimalEm) +
                               "sweep.axis1 = d\n"
                               "sweep.min1 = 0.5\n"
                               "sweep.max1 = 2.0\n"
                               "sweep.count1 = 3\n";
  const auto cfg1 = write_temp_config("map1.cfg", one_axis);
  CHECK(run_cli("regime-map " + cfg1.string()).exit_code == 2);
}

TEST_CASE("report writes only to the configured output path") {
  const auto dir = std::filesystem::temp_directory_path() / "gedanken_cli_tests";
  const auto out = dir / "report_out.json";
  std::filesystem::remove(out);
  const auto cfg = write_temp_config("routed.cfg", kMinimalEm);
  const RunResult r =
      run_cli("report " + cfg.string() + " --output " + out.string());
  CHECK(r.exit_code == 0);
  CHECK(std::filesystem::exists(out));
  std::ifstream in(out);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  CHECK(text.find("\"config\"") != std::string::npos);
  CHECK(text.find("\"results\"") != std::string::npos);
}
