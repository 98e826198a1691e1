#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct CliResult {
  int exit_code;
  std::string output;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CliResult run_cli(const std::string& args) {
  const std::string out_path = "cli_test_stdout.tmp";
  const std::string cmd =
      std::string(QDIRAC_CLI_PATH) + " " + args + " > " + out_path + " 2>&1";
  const int status = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.output = slurp(out_path);
  std::remove(out_path.c_str());
  return r;
}

}  // namespace

TEST_CASE("point: diffusion zone example") {
  const CliResult r = run_cli("point --energy 3 --v0 1");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("zone: D") != std::string::npos);
  CHECK(r.output.find("v_minus") != std::string::npos);
}

TEST_CASE("point: evanescent example reports Q_minus_sq < 0") {
  const CliResult r = run_cli("point --energy 2 --v0 1 --w0-abs 1");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("zone: E") != std::string::npos);
  CHECK(r.output.find("-0.2915026") != std::string::npos);
}

TEST_CASE("point: json output parses") {
  const CliResult r = run_cli("point --energy 2 --v0 0 --w0-abs 0.5 --format json");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"zone\"") != std::string::npos);
  // v_minus = p/E = sqrt(3)/2 at this point
  CHECK(r.output.find("\"v_minus\": 0.8660254037844386") != std::string::npos);
}

TEST_CASE("exit codes") {
  // usage: energy below the mass gap
  CHECK(run_cli("point --energy 0.5 --v0 1").exit_code == 1);
  // usage: unknown flag
  CHECK(run_cli("point --energy 2 --no-such-flag").exit_code == 1);
  // usage: missing subcommand
  CHECK(run_cli("").exit_code == 1);
  // degeneracy: E - V0 + m = 0 in the complex limit
  CHECK(run_cli("point --energy 2 --v0 3").exit_code == 2);
  // io: unwritable output path
  CHECK(run_cli("scan --quantity zone --grid 4x4 --output /nonexistent_dir/x.csv")
            .exit_code == 3);
}

TEST_CASE("mass flag rescales consistently") {
  const CliResult a = run_cli("point --energy 2 --v0 1 --w0-abs 0.5");
  const CliResult b = run_cli("point --energy 4 --v0 2 --w0-abs 1 --mass 2");
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
}

TEST_CASE("scan reruns are byte-identical") {
  const std::string flags =
      "scan --quantity v_minus_sq --grid 21x21 --xrange 0:2 --yrange 0:2";
  CHECK(run_cli(flags + " --output scan_a.csv").exit_code == 0);
  CHECK(run_cli(flags + " --output scan_b.csv").exit_code == 0);
  const std::string a = slurp("scan_a.csv");
  const std::string b = slurp("scan_b.csv");
  CHECK(!a.empty());
  CHECK(a == b);
  CHECK(a.rfind("v0_over_m,w0_over_m,value,zone\n", 0) == 0);
  std::remove("scan_a.csv");
  std::remove("scan_b.csv");
}

TEST_CASE("spinor subcommand certifies the residual") {
  const CliResult r = run_cli(
      "spinor --energy 2 --v0 0.5 --w0-abs 0.5 --branch minus --spin down --z 0.4");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("residual") != std::string::npos);
}

TEST_CASE("spinor in the complex limit splits into pure u / pure j parts") {
  const CliResult minus =
      run_cli("spinor --energy 2.2 --v0 0.8 --branch minus");
  CHECK(minus.exit_code == 0);
  std::size_t w_zeros = 0, pos = 0;
  while ((pos = minus.output.find("w = (0, 0)", pos)) != std::string::npos) {
    ++w_zeros;
    ++pos;
  }
  CHECK(w_zeros == 4);

  const CliResult plus = run_cli("spinor --energy 2.2 --v0 0.8 --branch plus");
  CHECK(plus.exit_code == 0);
  std::size_t u_zeros = 0;
  pos = 0;
  while ((pos = plus.output.find("u = (0, 0)", pos)) != std::string::npos) {
    ++u_zeros;
    ++pos;
  }
  CHECK(u_zeros == 4);
}

TEST_CASE("tunneling subcommand reproduces the circle point") {
  const CliResult r = run_cli("tunneling --v0 0.75");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("delta_E_over_m = 1\n") != std::string::npos);
}

TEST_CASE("verify: reproducible report, fault hook trips exit 4") {
  const std::string flags = "verify --seed 7 --n-points 40";
  CHECK(run_cli(flags + " --output verify_a.json").exit_code == 0);
  CHECK(run_cli(flags + " --output verify_b.json").exit_code == 0);
  const std::string a = slurp("verify_a.json");
  CHECK(!a.empty());
  CHECK(a == slurp("verify_b.json"));
  CHECK(a.find("\"all_pass\": true") != std::string::npos);
  std::remove("verify_a.json");
  std::remove("verify_b.json");

  const CliResult bad =
      run_cli(flags + " --inject-fault delta-sign --output verify_bad.json");
  CHECK(bad.exit_code == 4);
  CHECK(bad.output.find("FAIL") != std::string::npos);
  std::remove("verify_bad.json");
}
