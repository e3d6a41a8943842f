#include "rtctl/experiment.hpp"

#include <cmath>
#include <future>
#include <iomanip>
#include <sstream>

#include "rtctl/errors.hpp"
#include "rtctl/rng.hpp"

namespace rtctl::harness {

namespace {

std::string fmt_real(double v) {
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

}  // namespace

std::string_view to_string(ControllerKind kind) noexcept {
  switch (kind) {
    case ControllerKind::Prop: return "prop";
    case ControllerKind::Fuzzy: return "fuzzy";
    case ControllerKind::Fixed: return "fixed";
  }
  return "unknown";
}

ControllerKind parse_controller_kind(std::string_view text) {
  if (text == "prop") return ControllerKind::Prop;
  if (text == "fuzzy") return ControllerKind::Fuzzy;
  if (text == "fixed") return ControllerKind::Fixed;
  throw ConfigError("unknown controller '" + std::string(text) + "' (expected prop, fuzzy or fixed)");
}

std::string_view to_string(control::Defuzzifier method) noexcept {
  return method == control::Defuzzifier::Centroid ? "centroid" : "center-average";
}

control::Defuzzifier parse_defuzzifier(std::string_view text) {
  if (text == "center-average") return control::Defuzzifier::CenterAverage;
  if (text == "centroid") return control::Defuzzifier::Centroid;
  throw ConfigError("unknown defuzzifier '" + std::string(text) + "' (expected center-average or centroid)");
}

void ExperimentConfig::validate() const {
  workload.validate();
  if (!(reference >= 0.0) || !std::isfinite(reference)) throw ConfigError("reference must be non-negative");
  if (!(measurement_interval > 0.0)) throw ConfigError("measurement interval must be positive");
  if (!(sampling_window > 0.0) || sampling_window > measurement_interval) {
    throw ConfigError("sampling window must lie in (0, measurement interval]");
  }
  if (!(duration >= 0.0) || !std::isfinite(duration)) throw ConfigError("duration must be non-negative");
  const double ratio = duration / measurement_interval;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio)) {
    throw ConfigError("duration must be a whole multiple of the measurement interval");
  }
  clamp().validate();
  if (queue_guard == 0) throw ConfigError("queue guard must be positive");
  switch (controller) {
    case ControllerKind::Prop: p_config().validate(); break;
    case ControllerKind::Fuzzy: fuzzy_config().validate(); break;
    case ControllerKind::Fixed:
      if (std::round(u0) < 1) throw ConfigError("fixed max_requests must be a positive integer");
      break;
  }
  if (initial_max_requests && *initial_max_requests < 1) {
    throw ConfigError("initial max_requests must be a positive integer");
  }
}

int ExperimentConfig::n_intervals() const {
  return static_cast<int>(std::llround(duration / measurement_interval));
}

int ExperimentConfig::initial_u() const {
  if (controller == ControllerKind::Fixed) return control::round_and_clamp(u0, clamp());
  return control::round_and_clamp(initial_max_requests ? *initial_max_requests : u0, clamp());
}

control::PConfig ExperimentConfig::p_config() const { return {kp, reference, u0, clamp()}; }

control::FuzzyConfig ExperimentConfig::fuzzy_config() const {
  control::FuzzyConfig config;
  config.ge = ge;
  config.gu = gu;
  config.reference = reference;
  config.clamp = clamp();
  config.defuzzifier = defuzzifier;
  return config;
}

plant::IntervalTiming ExperimentConfig::timing() const {
  return {measurement_interval, sampling_window, queue_guard};
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::resolved() const {
  std::vector<std::pair<std::string, std::string>> out{
      {"controller", std::string(to_string(controller))},
      {"reference", fmt_real(reference)},
      {"duration", fmt_real(duration)},
      {"interval", fmt_real(measurement_interval)},
      {"window", fmt_real(sampling_window)},
      {"mean-interarrival", fmt_real(workload.mean_interarrival)},
      {"mean-service", fmt_real(workload.mean_service)},
      {"seed", std::to_string(seed)},
      {"u0", fmt_real(u0)},
      {"kp", fmt_real(kp)},
      {"ge", fmt_real(ge ? *ge : (reference > 0.0 ? 1.0 / reference : 0.0))},
      {"gu", fmt_real(gu)},
      {"defuzzifier", std::string(to_string(defuzzifier))},
      {"u-min", std::to_string(u_min)},
      {"u-max", std::to_string(u_max)},
      {"initial-u", std::to_string(initial_u())},
      {"queue-guard", std::to_string(queue_guard)},
      {"rng", std::string(sim::kGeneratorName)},
  };
  return out;
}

RunSummary summarize(const std::vector<plant::IntervalSample>& samples, double reference) {
  RunSummary summary;
  const int half = static_cast<int>(samples.size()) / 2;
  double sum_y = 0.0, sum_u = 0.0, sum_e2 = 0.0;
  std::size_t n = 0;
  for (const auto& s : samples) {
    if (s.k <= half) continue;
    sum_y += s.mean_response;
    sum_u += s.applied_max_requests;
    sum_e2 += s.error * s.error;
    ++n;
  }
  if (n == 0) return summary;
  const double count = static_cast<double>(n);
  summary.mean_response = sum_y / count;
  summary.mean_max_requests = sum_u / count;
  summary.rms_error = std::sqrt(sum_e2 / count);
  summary.converged = std::abs(summary.mean_response - reference) <= kRegulationBand * reference;
  return summary;
}

std::unique_ptr<control::Controller> make_controller(const ExperimentConfig& config) {
  switch (config.controller) {
    case ControllerKind::Prop:
      return std::make_unique<control::ProportionalController>(config.p_config());
    case ControllerKind::Fuzzy:
      return std::make_unique<control::FuzzyController>(config.fuzzy_config(), config.initial_u());
    case ControllerKind::Fixed:
      return std::make_unique<control::FixedController>(config.initial_u());
  }
  throw ConfigError("unknown controller kind");
}

std::vector<plant::IntervalSample> run_loop(plant::IntervalPlant& plant, control::Controller& controller,
                                            int initial_u, int n_intervals, double reference) {
  std::vector<plant::IntervalSample> samples;
  samples.reserve(static_cast<std::size_t>(std::max(n_intervals, 0)));
  int u = initial_u;
  for (int k = 1; k <= n_intervals; ++k) {
    const auto sample = plant.run_interval(u, reference);
    samples.push_back(sample);
    u = controller.update(sample);
  }
  return samples;
}

RunReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  auto controller = make_controller(config);
  plant::SimulatedServer server(config.workload, config.timing(), config.seed, config.initial_u());

  RunReport report;
  report.config = config;
  report.samples = run_loop(server, *controller, config.initial_u(), config.n_intervals(), config.reference);
  report.summary = summarize(report.samples, config.reference);
  return report;
}

ComparisonReport compare(ExperimentConfig prop, ExperimentConfig fuzzy) {
  prop.controller = ControllerKind::Prop;
  fuzzy.controller = ControllerKind::Fuzzy;
  if (prop.workload.mean_interarrival != fuzzy.workload.mean_interarrival ||
      prop.workload.mean_service != fuzzy.workload.mean_service) {
    throw ConfigError("compared runs must share the workload");
  }
  if (prop.seed != fuzzy.seed) throw ConfigError("compared runs must share the seed");
  if (prop.reference != fuzzy.reference) throw ConfigError("compared runs must share the reference");
  if (prop.duration != fuzzy.duration || prop.measurement_interval != fuzzy.measurement_interval ||
      prop.sampling_window != fuzzy.sampling_window) {
    throw ConfigError("compared runs must share duration and measurement timing");
  }
  prop.validate();
  fuzzy.validate();

  // Each run owns its simulator and streams; nothing mutable is shared.
  auto fuzzy_run = std::async(std::launch::async, [&fuzzy] { return run_experiment(fuzzy); });
  ComparisonReport report;
  report.prop = run_experiment(prop);
  report.fuzzy = fuzzy_run.get();
  report.efficiency_delta = report.prop.summary.mean_max_requests - report.fuzzy.summary.mean_max_requests;
  return report;
}

}  // namespace rtctl::harness
