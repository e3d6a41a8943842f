#include "rtctl/arx_plant.hpp"

namespace rtctl::plant {

double arx_step(ArxPlantState& state, double u) {
  state.u_dev = u - state.u0;
  state.y_dev = state.a * state.y_dev + state.b * state.u_dev;
  return state.y0 + state.y_dev;
}

double ArxPlant::step(double u) { return arx_step(state_, u); }

IntervalSample ArxIntervalPlant::run_interval(int max_requests, double reference) {
  ++k_;
  IntervalSample sample;
  sample.k = k_;
  sample.window_end = interval_ * k_;
  sample.applied_max_requests = max_requests;
  sample.mean_response = plant_.step(static_cast<double>(max_requests));
  sample.n_observed = 1;
  sample.error = reference - sample.mean_response;
  return sample;
}

}  // namespace rtctl::plant
