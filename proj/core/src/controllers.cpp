#include "rtctl/controllers.hpp"

#include <algorithm>
#include <cmath>

#include "rtctl/errors.hpp"

namespace rtctl::control {

void Clamp::validate() const {
  if (u_min < 1) throw ConfigError("u_min must be at least 1");
  if (u_max < u_min) throw ConfigError("u_max must not be below u_min");
}

int round_and_clamp(double u, const Clamp& clamp) {
  if (std::isnan(u)) return clamp.u_min;
  const double clamped = std::clamp(u, static_cast<double>(clamp.u_min), static_cast<double>(clamp.u_max));
  return static_cast<int>(std::round(clamped));
}

void PConfig::validate() const {
  clamp.validate();
  if (!std::isfinite(kp)) throw ConfigError("kp must be finite");
  if (!(reference >= 0.0)) throw ConfigError("reference must be non-negative");
  if (!std::isfinite(u0)) throw ConfigError("u0 must be finite");
}

ProportionalController::ProportionalController(const PConfig& config) : config_(config) {
  config_.validate();
}

int ProportionalController::update(const plant::IntervalSample& sample) {
  return round_and_clamp(command(sample.error), config_.clamp);
}

int p_update(const PConfig& config, const plant::IntervalSample& sample) {
  return round_and_clamp(config.u0 + config.kp * sample.error, config.clamp);
}

FixedController::FixedController(int u_fixed) : u_fixed_(u_fixed) {
  if (u_fixed < 1) throw ConfigError("fixed max_requests must be a positive integer");
}

}  // namespace rtctl::control
