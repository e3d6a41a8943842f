// Acceptance suite: one PASS/FAIL line per criterion, tolerances fixed below.
// Exit status is non-zero if any criterion fails.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oracles/ctmc_oracle.hpp"
#include "rtctl/arx_plant.hpp"
#include "rtctl/controllers.hpp"
#include "rtctl/erlang.hpp"
#include "rtctl/experiment.hpp"
#include "rtctl/fuzzy.hpp"
#include "rtctl/rng.hpp"
#include "rtctl/sysid.hpp"

using namespace rtctl;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string id;
  std::string title;
  double time_limit_sec;
  std::function<Outcome()> check;
};

constexpr double kA = 0.1;
constexpr double kB = -0.36;

// Closed loop of the proportional law on the deviation-form ARX plant
// (operating point 0, reference 0). Returns e(0..steps).
std::vector<double> linear_loop_errors(double kp, double initial_error, int steps) {
  plant::ArxPlant arx(plant::ArxPlantState{kA, kB, -initial_error, 0.0, 0.0, 0.0});
  control::ProportionalController p(control::PConfig{kp, 0.0, 0.0, {}});
  std::vector<double> errors{-arx.output()};
  for (int k = 0; k < steps; ++k) errors.push_back(-arx.step(p.command(errors.back())));
  return errors;
}

std::string fmt(double v, int precision = 6) {
  std::ostringstream out;
  out << std::setprecision(precision) << v;
  return out.str();
}

// --- 1 -----------------------------------------------------------------------
Outcome stability_boundary() {
  constexpr int kSteps = 60;
  constexpr double kDecayTarget = 1e-6;
  constexpr double kInitialError = 1.0;
  Outcome out{true, ""};
  for (double kp : {-3.0, 2.4}) {
    const auto e = linear_loop_errors(kp, kInitialError, kSteps);
    const bool decayed = std::abs(e.back()) < kDecayTarget;
    out.pass &= decayed;
    const double pole = std::abs(kA - kB * kp);
    out.detail += "kp=" + fmt(kp) + " |e60|=" + fmt(std::abs(e.back()), 3) + (decayed ? " ok" : " NOT<1e-6") +
                  " (|pole|=" + fmt(pole, 4) + ", needs " +
                  std::to_string(static_cast<int>(std::ceil(std::log(kDecayTarget) / std::log(pole)))) +
                  " steps); ";
  }
  for (double kp : {-3.2, 2.6}) {
    const auto e = linear_loop_errors(kp, kInitialError, kSteps);
    bool grows = true;
    for (std::size_t k = 1; k < e.size(); ++k) grows &= std::abs(e[k]) > std::abs(e[k - 1]);
    out.pass &= grows;
    out.detail += "kp=" + fmt(kp) + (grows ? " grows monotonically" : " NOT monotone") + " |e60|=" +
                  fmt(std::abs(e.back()), 3) + "; ";
  }
  return out;
}

// --- 2 -----------------------------------------------------------------------
Outcome exact_pole_law() {
  constexpr double kTolerance = 1e-12;
  const double expected = -0.44;
  const auto e = linear_loop_errors(-1.5, 1.0, 20);
  double worst = 0.0;
  for (std::size_t k = 1; k < e.size(); ++k) worst = std::max(worst, std::abs(e[k] / e[k - 1] - expected));
  const double pole = sysid::closed_loop_pole(sysid::ArxModel{kA, kB, 0, 0, 0}, -1.5);
  const bool pass = worst <= kTolerance && std::abs(pole - expected) <= kTolerance;
  return {pass, "max |ratio - (-0.44)| over 20 steps = " + fmt(worst, 3) + ", analytic pole = " + fmt(pole, 15)};
}

// --- 3 -----------------------------------------------------------------------
std::vector<sysid::IoPair> eq2_data(int n, std::uint64_t seed, double sigma) {
  sim::RngStream input(seed, 0), noise(seed, 1);
  std::vector<sysid::IoPair> data;
  double y = 0.0;
  for (int k = 0; k < n; ++k) {
    const double u = 10.0 * std::floor(input.uniform_open_closed() * 11.0 - 5.0);
    data.push_back({u, y + sigma * noise.normal()});
    y = kA * y + kB * u;
  }
  return data;
}

Outcome arx_recovery() {
  constexpr int kPoints = 50;
  constexpr double kExactTol = 1e-9;
  constexpr double kNoisyTol = 0.05;
  constexpr int kTrials = 100;
  constexpr int kRequiredHits = 95;

  const auto exact = sysid::fit_arx(eq2_data(kPoints, 1, 0.0), 0.0, 0.0);
  const bool exact_ok = std::abs(exact.a - kA) <= kExactTol && std::abs(exact.b - kB) <= kExactTol;

  int hits = 0;
  for (int t = 0; t < kTrials; ++t) {
    const auto m = sysid::fit_arx(eq2_data(kPoints, 100 + t, 0.1), 0.0, 0.0);
    hits += std::abs(m.a - kA) <= kNoisyTol && std::abs(m.b - kB) <= kNoisyTol;
  }
  return {exact_ok && hits >= kRequiredHits,
          "noiseless |da|=" + fmt(std::abs(exact.a - kA), 3) + " |db|=" + fmt(std::abs(exact.b - kB), 3) +
              "; sigma=0.1: " + std::to_string(hits) + "/100 trials within +/-0.05"};
}

// --- 4 -----------------------------------------------------------------------
Outcome simulator_vs_theory() {
  constexpr double kLargeTol = 0.05;
  constexpr double kSmallTol = 0.02;
  // 2e5 completions is the floor; at rho = 0.94 the wait series is so strongly
  // autocorrelated that 2e5 completions carry ~13% relative standard error,
  // so the gate uses 100x that many (about 1.3% standard error).
  constexpr std::uint64_t kLargeCompletions = 20'000'000;
  constexpr std::uint64_t kLargeWarmup = 200'000;
  constexpr std::uint64_t kSmallCompletions = 2'000'000;
  constexpr std::uint64_t kSmallWarmup = 20'000;

  const double theory = harness::erlang_c_wait(5.0, 1.0 / 60.0, 320);
  const auto big = harness::simulate_fixed_pool(plant::WorkloadConfig{0.2, 60.0}, 320, kLargeCompletions, 1,
                                                kLargeWarmup);
  const double big_rel = std::abs(big.mean_wait - theory) / theory;

  const auto floor_run = harness::simulate_fixed_pool(plant::WorkloadConfig{0.2, 60.0}, 320, 200'000, 1, 0);
  const double floor_rel = std::abs(floor_run.mean_wait - theory) / theory;

  const double ctmc = oracle::mmc_wait_by_ctmc(0.3, 0.1, 4, 400);
  const auto small = harness::simulate_fixed_pool(plant::WorkloadConfig{1.0 / 0.3, 10.0}, 4, kSmallCompletions, 1,
                                                  kSmallWarmup);
  const double small_rel = std::abs(small.mean_wait - ctmc) / ctmc;

  return {big_rel <= kLargeTol && small_rel <= kSmallTol,
          "c=320: sim " + fmt(big.mean_wait, 5) + " s vs Erlang-C " + fmt(theory, 5) + " s (rel " +
              fmt(big_rel, 3) + ", " + std::to_string(big.completions) + " completions; at exactly 2e5: rel " +
              fmt(floor_rel, 3) + "); c=4: sim " + fmt(small.mean_wait, 5) + " s vs CTMC " + fmt(ctmc, 5) +
              " s (rel " + fmt(small_rel, 3) + ")"};
}

harness::ExperimentConfig paper_config(harness::ControllerKind kind, double reference, std::uint64_t seed) {
  harness::ExperimentConfig c;
  c.controller = kind;
  c.reference = reference;
  c.duration = 3600.0;
  c.measurement_interval = 180.0;
  c.sampling_window = 60.0;
  c.workload = {0.2, 60.0};
  c.seed = seed;
  return c;
}

// --- 5 -----------------------------------------------------------------------
Outcome regulation() {
  constexpr double kBand = 0.25;
  Outcome out{true, ""};
  for (auto kind : {harness::ControllerKind::Prop, harness::ControllerKind::Fuzzy}) {
    for (double ref : {20.0, 25.0}) {
      out.detail += std::string(harness::to_string(kind)) + "@" + fmt(ref) + ":";
      for (std::uint64_t seed : {1, 2, 3}) {
        const auto r = harness::run_experiment(paper_config(kind, ref, seed));
        const bool ok = std::abs(r.summary.mean_response - ref) <= kBand * ref;
        out.pass &= ok;
        out.detail += " " + fmt(r.summary.mean_response, 4) + (ok ? "" : "(!)");
      }
      out.detail += "; ";
    }
  }
  return out;
}

// --- 6 -----------------------------------------------------------------------
Outcome reference_monotonicity() {
  constexpr std::uint64_t kSeed = 1;
  Outcome out{true, ""};
  for (auto kind : {harness::ControllerKind::Prop, harness::ControllerKind::Fuzzy}) {
    const auto at20 = harness::run_experiment(paper_config(kind, 20.0, kSeed)).summary.mean_max_requests;
    const auto at25 = harness::run_experiment(paper_config(kind, 25.0, kSeed)).summary.mean_max_requests;
    const bool ok = at25 < at20;
    out.pass &= ok;
    out.detail += std::string(harness::to_string(kind)) + ": u(25)=" + fmt(at25, 5) + " vs u(20)=" + fmt(at20, 5) +
                  (ok ? "" : " (not less)") + "; ";
  }
  return out;
}

// --- 7 -----------------------------------------------------------------------
Outcome fuzzy_algebra() {
  constexpr double kTol = 1e-12;
  const auto mfs = control::default_membership_functions();
  const control::FuzzyConfig cfg;
  sim::RngStream gen(2024, 0);
  double worst_sum = 0.0, worst_odd = 0.0;
  for (int i = 0; i < 10'000; ++i) {
    const double x = 2.0 * gen.uniform_open_closed() - 1.0;
    double sum = 0.0;
    for (double d : control::fuzzify(mfs, x)) sum += d;
    worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
    worst_odd = std::max(worst_odd, std::abs(control::normalized_output(cfg, x) + control::normalized_output(cfg, -x)));
  }
  control::IntegratorState state{300};
  plant::IntervalSample zero;
  zero.error = 0.0;
  const int before = state.current_u;
  control::fuzzy_update(cfg, state, zero);
  const bool fixpoint = state.current_u == before && control::normalized_output(cfg, 0.0) == 0.0;
  const double hand = control::normalized_output(cfg, -0.75);
  const bool hand_ok = std::abs(hand - 0.75) <= kTol;
  return {worst_sum <= kTol && worst_odd <= kTol && fixpoint && hand_ok,
          "max |sum-1|=" + fmt(worst_sum, 3) + ", max odd-symmetry gap=" + fmt(worst_odd, 3) +
              ", zero-error delta_u=" + std::to_string(state.current_u - before) +
              ", out(-0.75)=" + fmt(hand, 17)};
}

// --- 8 -----------------------------------------------------------------------
Outcome cli_determinism() {
#ifdef RTCTL_CLI_PATH
  const auto dir = std::filesystem::temp_directory_path() / ("rtctl_accept_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  const std::vector<std::string> invocations{
      "run --controller prop --reference 20 --seed 5",
      "run --controller fuzzy --reference 25 --seed 6 --gu 0.05",
      "run --controller fixed --u0 305 --seed 7 --duration 1800",
  };
  bool pass = true;
  std::string detail;
  int i = 0;
  for (const auto& flags : invocations) {
    const auto a = dir / ("a" + std::to_string(i) + ".csv"), b = dir / ("b" + std::to_string(i) + ".csv");
    const std::string base = std::string(RTCTL_CLI_PATH) + " " + flags + " --out ";
    const int ra = std::system((base + a.string()).c_str());
    const int rb = std::system((base + b.string()).c_str());
    const bool same = ra == 0 && rb == 0 && !slurp(a).empty() && slurp(a) == slurp(b);
    pass &= same;
    detail += "'" + flags + "' " + (same ? "identical" : "DIFFERENT") + "; ";
    ++i;
  }
  std::filesystem::remove_all(dir);
  return {pass, detail};
#else
  return {false, "CLI not built"};
#endif
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"C1", "stability boundary on the linear plant", 1.0, stability_boundary},
      {"C2", "exact pole law at Kp=-1.5", 1.0, exact_pole_law},
      {"C3", "ARX recovery", 5.0, arx_recovery},
      {"C4", "simulator vs Erlang-C / CTMC", 30.0, simulator_vs_theory},
      {"C5", "regulation within +/-25% (both controllers, refs 20/25, 3 seeds)", 30.0, regulation},
      {"C6", "reference monotonicity of max_requests", 15.0, reference_monotonicity},
      {"C7", "fuzzy algebra", 1.0, fuzzy_algebra},
      {"C8", "CLI determinism", 10.0, cli_determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.time_limit_sec;
    const bool pass = outcome.pass && in_time;
    failures += !pass;
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << c.id << " " << c.title << " (" << std::fixed
              << std::setprecision(3) << secs << " s, limit " << std::setprecision(0) << c.time_limit_sec
              << " s" << (in_time ? "" : " EXCEEDED") << ")\n       " << std::defaultfloat << outcome.detail
              << "\n";
  }
  std::cout << (failures == 0 ? "all acceptance criteria passed\n"
                              : std::to_string(failures) + " acceptance criterion/criteria failed\n");
  return failures == 0 ? 0 : 1;
}
