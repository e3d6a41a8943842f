#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rtctl/plant.hpp"

namespace rtctl::sysid {

struct IoPair {
  double u = 0.0;
  double y = 0.0;
};

/// Fitted first-order ARX model y(k+1) = a*y(k) + b*u(k) in deviations from
/// the operating point (y0, u0).
struct ArxModel {
  double a = 0.0;
  double b = 0.0;
  double y0 = 0.0;
  double u0 = 0.0;
  double residual_rms = 0.0;
};

struct StabilityReport {
  double pole = 0.0;    // closed-loop pole at the queried gain
  bool stable = false;  // |pole| < 1
  double kp_min = 0.0;  // open interval (kp_min, kp_max) of stabilizing gains
  double kp_max = 0.0;
};

/// Sweep that applies u(k) = u_start + k*u_step, k = 0..n_intervals-1, and
/// records y(k) from the plant after each interval.
struct StepExperiment {
  int u_start = 200;
  int u_step = 10;
  int n_intervals = 20;
};

/// Throws ConfigError if n_intervals < 3 or an input would be non-positive.
/// Plant divergence propagates as DivergenceError.
std::vector<IoPair> run_step_experiment(plant::IntervalPlant& plant, const StepExperiment& sweep,
                                        double reference = 0.0);

/// Builds a SimulatedServer starting at u_start and runs the sweep on it.
std::vector<IoPair> run_step_experiment(const plant::WorkloadConfig& workload,
                                        const plant::IntervalTiming& timing, std::uint64_t seed,
                                        const StepExperiment& sweep);

/// Ordinary least squares over deviation variables, solved through the 2x2
/// normal equations. Throws IdentifiabilityError on fewer than 3 points or a
/// rank-deficient regressor matrix.
ArxModel fit_arx(std::span<const IoPair> data, double y0, double u0);

/// Same, centred on the sample means of u and y.
ArxModel fit_arx(std::span<const IoPair> data);

/// Pole of 1 + Kp*G(z) = 0 for G(z) = b / (z - a): a - b*kp.
double closed_loop_pole(const ArxModel& model, double kp) noexcept;

/// Solves |a - b*kp| < 1 exactly. Throws std::invalid_argument when b == 0.
StabilityReport stable_gain_interval(const ArxModel& model, double kp = 0.0);

}  // namespace rtctl::sysid
