// rtctl: response-time regulation experiments on a simulated worker pool.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "flat_config.hpp"
#include "rtctl/erlang.hpp"
#include "rtctl/errors.hpp"
#include "rtctl/experiment.hpp"
#include "rtctl/report.hpp"
#include "rtctl/sysid.hpp"

namespace {

using rtctl::harness::ExperimentConfig;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

struct ExperimentFlags {
  ExperimentConfig config;
  std::string controller = "prop";
  std::string defuzzifier = "center-average";
  std::optional<double> ge;
  std::optional<int> initial_u;

  ExperimentConfig resolve() {
    config.controller = rtctl::harness::parse_controller_kind(controller);
    config.defuzzifier = rtctl::harness::parse_defuzzifier(defuzzifier);
    config.ge = ge;
    config.initial_max_requests = initial_u;
    return config;
  }
};

void add_workload_flags(CLI::App* cmd, rtctl::plant::WorkloadConfig& workload) {
  cmd->add_option("--mean-interarrival", workload.mean_interarrival, "Mean time between arrivals, seconds")
      ->capture_default_str();
  cmd->add_option("--mean-service", workload.mean_service, "Mean service time, seconds")->capture_default_str();
}

void add_experiment_flags(CLI::App* cmd, ExperimentFlags& flags, bool with_controller) {
  auto& c = flags.config;
  if (with_controller) {
    cmd->add_option("--controller", flags.controller, "Controller: prop, fuzzy or fixed")
        ->check(CLI::IsMember({"prop", "fuzzy", "fixed"}))
        ->capture_default_str();
  }
  cmd->add_option("--reference", c.reference, "Target response time, seconds")->capture_default_str();
  cmd->add_option("--duration", c.duration, "Simulated run length, seconds")->capture_default_str();
  cmd->add_option("--interval", c.measurement_interval, "Measurement interval, seconds")->capture_default_str();
  cmd->add_option("--window", c.sampling_window, "Sampling window at the end of each interval, seconds")
      ->capture_default_str();
  add_workload_flags(cmd, c.workload);
  cmd->add_option("--seed", c.seed, "Master seed for the variate streams")->capture_default_str();
  cmd->add_option("--u0", c.u0, "Operating-point max_requests (the fixed controller's value)")
      ->capture_default_str();
  cmd->add_option("--kp", c.kp, "Proportional gain")->capture_default_str();
  cmd->add_option("--ge", flags.ge, "Fuzzy input normalization gain, 1/s (default 1/reference)");
  cmd->add_option("--gu", c.gu, "Fuzzy output normalization gain")->capture_default_str();
  cmd->add_option("--defuzzifier", flags.defuzzifier, "center-average or centroid")
      ->check(CLI::IsMember({"center-average", "centroid"}))
      ->capture_default_str();
  cmd->add_option("--u-min", c.u_min, "Lower clamp on max_requests")->capture_default_str();
  cmd->add_option("--u-max", c.u_max, "Upper clamp on max_requests")->capture_default_str();
  cmd->add_option("--initial-u", flags.initial_u, "max_requests for the first interval (default u0)");
  cmd->add_option("--queue-guard", c.queue_guard, "Abort when the pending queue exceeds this length")
      ->capture_default_str();
}

void print_model(const rtctl::sysid::ArxModel& model, double kp) {
  const auto report = rtctl::sysid::stable_gain_interval(model, kp);
  std::cout << std::fixed << std::setprecision(6);
  std::cout << "a,b,pole,stable,kp_min,kp_max\n"
            << model.a << ',' << model.b << ',' << report.pole << ',' << (report.stable ? "true" : "false") << ','
            << report.kp_min << ',' << report.kp_max << '\n';
}

int run_identify(const rtctl::plant::WorkloadConfig& workload, const rtctl::plant::IntervalTiming& timing,
                 std::uint64_t seed, const rtctl::sysid::StepExperiment& sweep, double kp,
                 const std::string& out_path) {
  const auto data = rtctl::sysid::run_step_experiment(workload, timing, seed, sweep);
  const auto model = rtctl::sysid::fit_arx(data);

  std::cout << std::fixed << std::setprecision(6);
  std::cout << "# step experiment: u_start=" << sweep.u_start << " u_step=" << sweep.u_step
            << " intervals=" << sweep.n_intervals << " seed=" << seed << '\n';
  std::cout << "# operating point: y0=" << model.y0 << " u0=" << model.u0 << '\n';
  std::cout << "# residual_rms=" << model.residual_rms << '\n';
  print_model(model, kp);

  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + out_path + "' for writing");
    out << std::fixed << std::setprecision(6) << "k,u,y\n";
    for (std::size_t k = 0; k < data.size(); ++k) out << k << ',' << data[k].u << ',' << data[k].y << '\n';
    if (!out) throw std::runtime_error("write to '" + out_path + "' failed");
  }
  return kExitOk;
}

int run_oracle(double lambda, double mu, int c, std::uint64_t completions, std::uint64_t warmup,
               std::uint64_t seed) {
  const double p_wait = rtctl::harness::erlang_c_probability(lambda, mu, c);
  const double wait = rtctl::harness::erlang_c_wait(lambda, mu, c);
  std::cout << std::fixed << std::setprecision(6);
  std::cout << "lambda,mu,c,p_wait,wait_sec\n"
            << lambda << ',' << mu << ',' << c << ',' << p_wait << ',' << wait << '\n';
  if (completions > 0) {
    rtctl::plant::WorkloadConfig workload{1.0 / lambda, 1.0 / mu};
    const auto sim = rtctl::harness::simulate_fixed_pool(workload, c, completions, seed, warmup);
    const double rel = wait > 0.0 ? (sim.mean_wait - wait) / wait : 0.0;
    std::cout << "simulated_wait_sec,completions,relative_error\n"
              << sim.mean_wait << ',' << sim.completions << ',' << rel << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rtctl: feedback control of a simulated admission-controlled worker pool"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.footer("Any subcommand accepts --config <file> with 'flag = value' lines; later flags override it.");

  // identify
  auto* identify = app.add_subcommand("identify", "Step experiment on the simulator plus least-squares ARX fit");
  rtctl::plant::WorkloadConfig id_workload;
  rtctl::plant::IntervalTiming id_timing;
  rtctl::sysid::StepExperiment sweep;
  std::uint64_t id_seed = 1;
  double id_kp = -1.5;
  std::string id_out;
  identify->add_option("--u-start", sweep.u_start, "First max_requests value")->capture_default_str();
  identify->add_option("--u-step", sweep.u_step, "Increment per interval")->capture_default_str();
  identify->add_option("--intervals", sweep.n_intervals, "Number of intervals (>= 3)")->capture_default_str();
  identify->add_option("--interval", id_timing.measurement_interval, "Measurement interval, seconds")
      ->capture_default_str();
  identify->add_option("--window", id_timing.sampling_window, "Sampling window, seconds")->capture_default_str();
  identify->add_option("--queue-guard", id_timing.queue_guard, "Divergence guard on queue length")
      ->capture_default_str();
  add_workload_flags(identify, id_workload);
  identify->add_option("--seed", id_seed, "Master seed")->capture_default_str();
  identify->add_option("--kp", id_kp, "Gain at which to report the closed-loop pole")->capture_default_str();
  identify->add_option("--out", id_out, "Write the (u, y) series as CSV");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Closed-loop pole and stabilizing gain interval of an ARX model");
  rtctl::sysid::ArxModel an_model{0.1, -0.36, 0.0, 0.0, 0.0};
  double an_kp = -1.5;
  analyze->add_option("--a", an_model.a, "ARX coefficient a")->capture_default_str();
  analyze->add_option("--b", an_model.b, "ARX coefficient b")->capture_default_str();
  analyze->add_option("--kp", an_kp, "Proportional gain")->capture_default_str();

  // run
  auto* run = app.add_subcommand("run", "Closed-loop simulation; writes the interval series as CSV");
  ExperimentFlags run_flags;
  std::string run_out, run_plot;
  add_experiment_flags(run, run_flags, true);
  run->add_option("--out", run_out, "CSV output path (default: stdout)");
  run->add_option("--plot", run_plot, "Also write a two-panel SVG plot");

  // compare
  auto* cmp = app.add_subcommand("compare", "Proportional vs fuzzy on one workload realization");
  ExperimentFlags cmp_flags;
  std::string cmp_prefix;
  add_experiment_flags(cmp, cmp_flags, false);
  cmp->add_option("--out-prefix", cmp_prefix, "Write <prefix>_prop.csv and <prefix>_fuzzy.csv");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Erlang-C mean queue wait, optionally checked by simulation");
  double or_lambda = 5.0, or_mu = 1.0 / 60.0;
  int or_c = 320;
  std::uint64_t or_completions = 0, or_warmup = 0, or_seed = 1;
  oracle->add_option("--lambda", or_lambda, "Arrival rate, 1/s")->capture_default_str();
  oracle->add_option("--mu", or_mu, "Service rate per worker, 1/s")->capture_default_str();
  oracle->add_option("--c", or_c, "Number of workers")->capture_default_str();
  oracle->add_option("--simulate", or_completions, "Also simulate this many completions")->capture_default_str();
  oracle->add_option("--warmup", or_warmup, "Completions discarded before measuring")->capture_default_str();
  oracle->add_option("--seed", or_seed, "Master seed")->capture_default_str();

  try {
    auto args = rtctl::tools::expand_config_arguments(std::vector<std::string>(argv + 1, argv + argc));
    std::reverse(args.begin(), args.end());  // CLI11 consumes a reversed vector
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  } catch (const rtctl::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (*identify) return run_identify(id_workload, id_timing, id_seed, sweep, id_kp, id_out);

    if (*analyze) {
      print_model(an_model, an_kp);
      return kExitOk;
    }

    if (*run) {
      const auto config = run_flags.resolve();
      const auto report = rtctl::harness::run_experiment(config);
      if (run_out.empty() || run_out == "-") {
        rtctl::harness::write_csv(report, std::cout);
      } else {
        rtctl::harness::emit_csv(report, run_out);
      }
      if (!run_plot.empty()) rtctl::harness::emit_svg(report, run_plot);
      return kExitOk;
    }

    if (*cmp) {
      const auto base = cmp_flags.resolve();
      const auto report = rtctl::harness::compare(base, base);
      rtctl::harness::write_comparison(report, std::cout);
      if (!cmp_prefix.empty()) {
        rtctl::harness::emit_csv(report.prop, cmp_prefix + "_prop.csv");
        rtctl::harness::emit_csv(report.fuzzy, cmp_prefix + "_fuzzy.csv");
      }
      return kExitOk;
    }

    if (*oracle) return run_oracle(or_lambda, or_mu, or_c, or_completions, or_warmup, or_seed);
  } catch (const rtctl::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitConfig;
}
