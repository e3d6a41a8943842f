#include "rtctl/sysid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "rtctl/errors.hpp"

namespace rtctl::sysid {

std::vector<IoPair> run_step_experiment(plant::IntervalPlant& plant, const StepExperiment& sweep,
                                        double reference) {
  if (sweep.n_intervals < 3) throw ConfigError("step experiment needs at least 3 intervals");
  const long long last = static_cast<long long>(sweep.u_start) +
                         static_cast<long long>(sweep.n_intervals - 1) * sweep.u_step;
  if (sweep.u_start < 1 || last < 1) throw ConfigError("step experiment inputs must stay positive");

  std::vector<IoPair> data;
  data.reserve(static_cast<std::size_t>(sweep.n_intervals));
  for (int k = 0; k < sweep.n_intervals; ++k) {
    const int u = sweep.u_start + k * sweep.u_step;
    const auto sample = plant.run_interval(u, reference);
    data.push_back({static_cast<double>(u), sample.mean_response});
  }
  return data;
}

std::vector<IoPair> run_step_experiment(const plant::WorkloadConfig& workload,
                                        const plant::IntervalTiming& timing, std::uint64_t seed,
                                        const StepExperiment& sweep) {
  if (sweep.u_start < 1) throw ConfigError("step experiment inputs must stay positive");
  plant::SimulatedServer server(workload, timing, seed, sweep.u_start);
  return run_step_experiment(server, sweep);
}

ArxModel fit_arx(std::span<const IoPair> data, double y0, double u0) {
  if (data.size() < 3) throw IdentifiabilityError("ARX fit needs at least 3 data points");

  // Regress y(k+1) on [y(k), u(k)].
  double syy = 0.0, syu = 0.0, suu = 0.0, sty = 0.0, stu = 0.0;
  for (std::size_t k = 0; k + 1 < data.size(); ++k) {
    const double y = data[k].y - y0;
    const double u = data[k].u - u0;
    const double target = data[k + 1].y - y0;
    syy += y * y;
    syu += y * u;
    suu += u * u;
    sty += target * y;
    stu += target * u;
  }

  const double det = syy * suu - syu * syu;
  // Gram determinant relative to its scale: 1 - cos^2 of the regressor angle.
  const double scale = syy * suu;
  if (!(scale > 0.0) || !(det > 1e-12 * scale)) {
    std::ostringstream msg;
    msg << "ARX parameters not identifiable: regressor matrix is rank deficient (sum y^2=" << syy
        << ", sum u^2=" << suu << ", det=" << det << ")";
    throw IdentifiabilityError(msg.str());
  }

  ArxModel model;
  model.y0 = y0;
  model.u0 = u0;
  model.a = (suu * sty - syu * stu) / det;
  model.b = (syy * stu - syu * sty) / det;

  double sse = 0.0;
  for (std::size_t k = 0; k + 1 < data.size(); ++k) {
    const double r = (data[k + 1].y - y0) - model.a * (data[k].y - y0) - model.b * (data[k].u - u0);
    sse += r * r;
  }
  model.residual_rms = std::sqrt(sse / static_cast<double>(data.size() - 1));
  return model;
}

ArxModel fit_arx(std::span<const IoPair> data) {
  if (data.empty()) throw IdentifiabilityError("ARX fit needs at least 3 data points");
  double mean_u = 0.0, mean_y = 0.0;
  for (const auto& p : data) {
    mean_u += p.u;
    mean_y += p.y;
  }
  mean_u /= static_cast<double>(data.size());
  mean_y /= static_cast<double>(data.size());
  return fit_arx(data, mean_y, mean_u);
}

double closed_loop_pole(const ArxModel& model, double kp) noexcept { return model.a - model.b * kp; }

StabilityReport stable_gain_interval(const ArxModel& model, double kp) {
  if (model.b == 0.0) throw std::invalid_argument("b == 0: the input has no effect on the output");
  // -1 < a - b*kp < 1  <=>  (a - 1)/b < kp < (a + 1)/b for b > 0, reversed for b < 0.
  const double lo = (model.a - 1.0) / model.b;
  const double hi = (model.a + 1.0) / model.b;
  StabilityReport report;
  report.kp_min = std::min(lo, hi);
  report.kp_max = std::max(lo, hi);
  report.pole = closed_loop_pole(model, kp);
  // Poles within rounding of the unit circle count as marginal, not stable.
  const double slack = 4.0 * std::numeric_limits<double>::epsilon() *
                       std::max(1.0, std::abs(model.a) + std::abs(model.b * kp));
  report.stable = std::abs(report.pole) < 1.0 - slack;
  return report;
}

}  // namespace rtctl::sysid
