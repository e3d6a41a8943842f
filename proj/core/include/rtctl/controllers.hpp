#pragma once

#include <memory>
#include <string_view>

#include "rtctl/plant.hpp"

namespace rtctl::control {

/// Admissible range for max_requests.
struct Clamp {
  int u_min = 1;
  int u_max = 10000;

  void validate() const;
};

/// Clamps to [u_min, u_max], then rounds half away from zero.
int round_and_clamp(double u, const Clamp& clamp);

/// The autonomic manager: reads one interval sample, returns the max_requests
/// to apply during the next interval.
class Controller {
 public:
  virtual ~Controller() = default;
  virtual int update(const plant::IntervalSample& sample) = 0;
  [[nodiscard]] virtual std::string_view name() const noexcept = 0;
};

struct PConfig {
  double kp = -1.5;
  double reference = 20.0;  // seconds
  double u0 = 300.0;        // operating-point max_requests
  Clamp clamp;

  void validate() const;
};

/// u(k) = u0 + kp * e(k), where e(k) = reference - measured response.
/// Stateless between calls.
class ProportionalController final : public Controller {
 public:
  explicit ProportionalController(const PConfig& config);

  /// Unrounded, unclamped control law.
  [[nodiscard]] double command(double error) const noexcept { return config_.u0 + config_.kp * error; }

  int update(const plant::IntervalSample& sample) override;
  [[nodiscard]] std::string_view name() const noexcept override { return "prop"; }
  [[nodiscard]] const PConfig& config() const noexcept { return config_; }

 private:
  PConfig config_;
};

/// Stateless form of ProportionalController::update.
int p_update(const PConfig& config, const plant::IntervalSample& sample);

/// Baseline that ignores its input.
class FixedController final : public Controller {
 public:
  explicit FixedController(int u_fixed);
  int update(const plant::IntervalSample&) override { return u_fixed_; }
  [[nodiscard]] std::string_view name() const noexcept override { return "fixed"; }

 private:
  int u_fixed_;
};

inline int fixed_update(int u_fixed) { return u_fixed; }

}  // namespace rtctl::control
