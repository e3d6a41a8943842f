#pragma once

#include <cstdint>

#include "rtctl/plant.hpp"

namespace rtctl::harness {

/// Probability that an arrival to an M/M/c queue has to wait. Uses the
/// Erlang-B recurrence B(k) = a*B(k-1) / (k + a*B(k-1)) and converts to
/// Erlang-C. Throws ConfigError unless lambda >= 0, mu > 0, c >= 1 and
/// lambda / (c*mu) < 1.
double erlang_c_probability(double lambda, double mu, int c);

/// Mean time in queue for M/M/c: P_wait / (c*mu - lambda), seconds.
double erlang_c_wait(double lambda, double mu, int c);

struct FixedPoolResult {
  std::uint64_t completions = 0;  // completions observed after warm-up
  std::uint64_t waits_counted = 0;
  double mean_wait = 0.0;
  double sim_time = 0.0;
};

/// Simulates the worker pool at a fixed max_requests = c until `completions`
/// requests have finished, after discarding the first `warmup` completions.
/// The mean covers every request that entered service after warm-up.
FixedPoolResult simulate_fixed_pool(const plant::WorkloadConfig& workload, int c, std::uint64_t completions,
                                    std::uint64_t seed, std::uint64_t warmup = 0);

}  // namespace rtctl::harness
