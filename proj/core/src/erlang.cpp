#include "rtctl/erlang.hpp"

#include <sstream>

#include "rtctl/errors.hpp"

namespace rtctl::harness {

double erlang_c_probability(double lambda, double mu, int c) {
  if (!(lambda >= 0.0)) throw ConfigError("arrival rate must be non-negative");
  if (!(mu > 0.0)) throw ConfigError("service rate must be positive");
  if (c < 1) throw ConfigError("server count must be positive");
  const double offered = lambda / mu;
  const double rho = offered / c;
  if (!(rho < 1.0)) {
    std::ostringstream msg;
    msg << "unstable load: rho = lambda/(c*mu) = " << rho << " >= 1";
    throw ConfigError(msg.str());
  }
  double blocking = 1.0;
  for (int k = 1; k <= c; ++k) blocking = offered * blocking / (k + offered * blocking);
  return blocking / (1.0 - rho * (1.0 - blocking));
}

double erlang_c_wait(double lambda, double mu, int c) {
  const double p_wait = erlang_c_probability(lambda, mu, c);
  return p_wait / (c * mu - lambda);
}

FixedPoolResult simulate_fixed_pool(const plant::WorkloadConfig& workload, int c, std::uint64_t completions,
                                    std::uint64_t seed, std::uint64_t warmup) {
  plant::ServerModel model(workload, seed, c);
  FixedPoolResult result;
  double wait_sum = 0.0;
  bool warm = warmup == 0;
  model.set_entry_observer([&](const plant::ServiceEntry& entry) {
    if (!warm) return;
    wait_sum += entry.response_time();
    ++result.waits_counted;
  });
  model.start();

  auto& sim = model.simulator();
  const std::uint64_t target = warmup + completions;
  while (model.completions() < target && sim.step()) {
    if (!warm && model.completions() >= warmup) warm = true;
  }
  result.completions = model.completions() - warmup;
  result.mean_wait = result.waits_counted > 0 ? wait_sum / static_cast<double>(result.waits_counted) : 0.0;
  result.sim_time = sim.now();
  return result;
}

}  // namespace rtctl::harness
