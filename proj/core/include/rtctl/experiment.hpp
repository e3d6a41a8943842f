#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rtctl/controllers.hpp"
#include "rtctl/fuzzy.hpp"
#include "rtctl/plant.hpp"

namespace rtctl::harness {

enum class ControllerKind { Prop, Fuzzy, Fixed };

std::string_view to_string(ControllerKind kind) noexcept;
/// Accepts "prop", "fuzzy" or "fixed"; throws ConfigError otherwise.
ControllerKind parse_controller_kind(std::string_view text);

std::string_view to_string(control::Defuzzifier method) noexcept;
control::Defuzzifier parse_defuzzifier(std::string_view text);

/// Fraction of the reference that counts as regulated.
inline constexpr double kRegulationBand = 0.25;

struct ExperimentConfig {
  ControllerKind controller = ControllerKind::Prop;
  double reference = 20.0;              // seconds
  double duration = 3600.0;             // seconds
  double measurement_interval = 180.0;  // seconds
  double sampling_window = 60.0;        // seconds
  plant::WorkloadConfig workload;
  std::uint64_t seed = 1;

  double u0 = 300.0;  // operating point; also the value held by the fixed controller
  double kp = -1.5;
  std::optional<double> ge;  // defaults to 1/reference
  double gu = 0.05;
  control::Defuzzifier defuzzifier = control::Defuzzifier::CenterAverage;
  int u_min = 1;
  int u_max = 10000;
  std::optional<int> initial_max_requests;  // defaults to u0
  std::size_t queue_guard = 1'000'000;

  /// Throws ConfigError on any violated invariant.
  void validate() const;

  [[nodiscard]] int n_intervals() const;
  [[nodiscard]] int initial_u() const;
  [[nodiscard]] control::Clamp clamp() const { return {u_min, u_max}; }
  [[nodiscard]] control::PConfig p_config() const;
  [[nodiscard]] control::FuzzyConfig fuzzy_config() const;
  [[nodiscard]] plant::IntervalTiming timing() const;

  /// Fully resolved settings as (flag name, value) pairs, defaults filled in.
  [[nodiscard]] std::vector<std::pair<std::string, std::string>> resolved() const;
};

struct RunSummary {
  double mean_response = 0.0;      // final half
  double mean_max_requests = 0.0;  // final half
  double rms_error = 0.0;          // final half
  bool converged = false;          // final-half mean response within the regulation band
};

struct RunReport {
  ExperimentConfig config;
  std::vector<plant::IntervalSample> samples;
  RunSummary summary;
};

/// Summary over samples whose index k exceeds half the sample count.
RunSummary summarize(const std::vector<plant::IntervalSample>& samples, double reference);

std::unique_ptr<control::Controller> make_controller(const ExperimentConfig& config);

/// Closes the loop for config.n_intervals() intervals: sample, update, apply.
std::vector<plant::IntervalSample> run_loop(plant::IntervalPlant& plant, control::Controller& controller,
                                            int initial_u, int n_intervals, double reference);

/// Runs the queueing simulation under the configured controller.
RunReport run_experiment(const ExperimentConfig& config);

struct ComparisonReport {
  RunReport prop;
  RunReport fuzzy;
  /// prop minus fuzzy final-half mean max_requests; negative means the
  /// proportional controller used fewer workers.
  double efficiency_delta = 0.0;
};

/// Runs both controllers on the same workload realization, concurrently.
/// Throws ConfigError if workload, seed, reference, duration or timing differ.
ComparisonReport compare(ExperimentConfig prop, ExperimentConfig fuzzy);

}  // namespace rtctl::harness
