#pragma once

#include "rtctl/plant.hpp"

namespace rtctl::plant {

/// First-order ARX plant in deviation variables around (y0, u0):
/// y_dev(k+1) = a * y_dev(k) + b * u_dev(k).
struct ArxPlantState {
  double a = 0.1;
  double b = -0.36;
  double y_dev = 0.0;
  double u_dev = 0.0;
  double y0 = 0.0;
  double u0 = 0.0;
};

class ArxPlant {
 public:
  explicit ArxPlant(const ArxPlantState& state) : state_(state) {}

  /// Applies input u, advances one step and returns the absolute output.
  double step(double u);

  [[nodiscard]] double output() const noexcept { return state_.y0 + state_.y_dev; }
  [[nodiscard]] const ArxPlantState& state() const noexcept { return state_; }

 private:
  ArxPlantState state_;
};

/// Free-function form of ArxPlant::step.
double arx_step(ArxPlantState& state, double u);

/// ArxPlant exposed through the interval-plant interface. The integer
/// max_requests is applied as-is; n_observed is always 1.
class ArxIntervalPlant final : public IntervalPlant {
 public:
  ArxIntervalPlant(const ArxPlantState& state, double measurement_interval = 180.0)
      : plant_(state), interval_(measurement_interval) {}

  IntervalSample run_interval(int max_requests, double reference) override;

  [[nodiscard]] const ArxPlant& plant() const noexcept { return plant_; }

 private:
  ArxPlant plant_;
  double interval_;
  int k_ = 0;
};

}  // namespace rtctl::plant
