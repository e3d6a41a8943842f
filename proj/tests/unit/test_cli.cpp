#include <doctest.h>

#include <sys/wait.h>

#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "flat_config.hpp"
#include "rtctl/errors.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int exit_code;
  std::string out;
};

Result run_cli(const std::string& args) {
  const std::string cmd = std::string(RTCTL_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

struct TempDir {
  fs::path path = fs::temp_directory_path() / ("rtctl_cli_" + std::to_string(::getpid()));
  TempDir() { fs::create_directories(path); }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("flat config parsing") {
  std::istringstream in("# comment\n\nreference = 25\n--seed=7\n; other\ncontroller = \"fuzzy\"\n");
  const auto cfg = rtctl::tools::parse_flat_config(in);
  REQUIRE(cfg.size() == 3);
  CHECK(cfg[0] == std::pair<std::string, std::string>{"reference", "25"});
  CHECK(cfg[1].first == "seed");
  CHECK(cfg[2].second == "fuzzy");

  std::istringstream bad("reference 25\n");
  CHECK_THROWS_AS(rtctl::tools::parse_flat_config(bad), rtctl::ConfigError);
  CHECK_THROWS_AS(rtctl::tools::read_flat_config("/nonexistent/rtctl.cfg"), rtctl::ConfigError);

  const auto args = rtctl::tools::to_arguments(cfg);
  CHECK(args == std::vector<std::string>{"--reference", "25", "--seed", "7", "--controller", "fuzzy"});
}

TEST_CASE("analyze prints the pole and the stabilizing interval") {
  const auto r = run_cli("analyze --a 0.1 --b -0.36 --kp -1.5");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "a,b,pole,stable,kp_min,kp_max\n0.100000,-0.360000,-0.440000,true,-3.055556,2.500000\n");
  CHECK(run_cli("analyze --kp 2.5").out.find(",1.000000,false,") != std::string::npos);
  CHECK(run_cli("analyze --b 0").exit_code == 1);
}

TEST_CASE("run output is deterministic and honours --out") {
  TempDir tmp;
  const auto a = tmp.path / "a.csv", b = tmp.path / "b.csv", svg = tmp.path / "p.svg";
  const std::string flags = "run --controller fuzzy --reference 25 --seed 11";
  CHECK(run_cli(flags + " --out " + a.string() + " --plot " + svg.string()).exit_code == 0);
  CHECK(run_cli(flags + " --out " + b.string()).exit_code == 0);
  const auto text = slurp(a);
  CHECK(text == slurp(b));
  CHECK(text == run_cli(flags).out);
  CHECK(text.find("k,window_end_sec,applied_max_requests,mean_response_sec,n_observed,error_sec\n") !=
        std::string::npos);
  CHECK(fs::file_size(svg) > 1000);
}

TEST_CASE("config file values apply and later flags override them") {
  TempDir tmp;
  const auto cfg = tmp.path / "exp.cfg";
  std::ofstream(cfg) << "controller = fixed\nu0 = 310\nduration = 540\n";
  const auto r = run_cli("run --config " + cfg.string());
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("# controller = fixed") != std::string::npos);
  CHECK(r.out.find("\n3,540.000,310,") != std::string::npos);

  const auto over = run_cli("run --config " + cfg.string() + " --u0 320");
  CHECK(over.out.find("\n1,180.000,320,") != std::string::npos);
}

TEST_CASE("exit codes") {
  TempDir tmp;
  CHECK(run_cli("run --controller pid").exit_code == 1);
  CHECK(run_cli("run --window 500").exit_code == 1);
  CHECK(run_cli("run --duration 100").exit_code == 1);
  CHECK(run_cli("frobnicate").exit_code == 1);
  CHECK(run_cli("run --config /nonexistent/x.cfg").exit_code == 1);
  CHECK(run_cli("oracle --lambda 5 --mu 0.0166666 --c 300").exit_code == 1);
  // Divergence guard and I/O failures are runtime errors.
  CHECK(run_cli("run --controller fixed --u0 100 --queue-guard 50").exit_code == 2);
  CHECK(run_cli("run --out " + (tmp.path / "no" / "such" / "dir.csv").string()).exit_code == 2);
  CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("identify, compare and oracle subcommands") {
  const auto id = run_cli("identify --seed 2");
  CHECK(id.exit_code == 0);
  CHECK(id.out.find("a,b,pole,stable,kp_min,kp_max\n") != std::string::npos);
  CHECK(id.out.find("u_start=200 u_step=10 intervals=20") != std::string::npos);

  const auto cmp = run_cli("compare --reference 20 --seed 3");
  CHECK(cmp.exit_code == 0);
  CHECK(cmp.out.find("\nprop,") != std::string::npos);
  CHECK(cmp.out.find("\nfuzzy,") != std::string::npos);
  CHECK(cmp.out.find("efficiency_delta") != std::string::npos);

  const auto orc = run_cli("oracle --lambda 0.5 --mu 1 --c 1");
  CHECK(orc.exit_code == 0);
  CHECK(orc.out == "lambda,mu,c,p_wait,wait_sec\n0.500000,1.000000,1,0.500000,1.000000\n");
  const auto sim = run_cli("oracle --lambda 0.3 --mu 0.1 --c 4 --simulate 20000");
  CHECK(sim.out.find("simulated_wait_sec,completions,relative_error") != std::string::npos);
}
