#include "rtctl/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rtctl::sim {

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::uint32_t stream_id) noexcept {
  std::uint64_t state = master_seed;
  std::uint64_t out = splitmix64(state);
  for (std::uint32_t i = 0; i < stream_id; ++i) out = splitmix64(state);
  return out;
}

double exponential_from_uniform(double u, double mean) {
  if (!(mean > 0.0)) throw std::invalid_argument("exponential mean must be positive");
  return mean * -std::log(u);
}

RngStream::RngStream(std::uint64_t seed, std::uint32_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(derive_stream_seed(seed, stream_id)) {}

double RngStream::uniform_open_closed() {
  // (0, 1]: never returns 0, so -ln(u) is finite.
  return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
}

double RngStream::exponential(double mean) {
  if (!(mean > 0.0)) throw std::invalid_argument("exponential mean must be positive");
  double value = exponential_from_uniform(uniform_open_closed(), mean);
  // u == 1 gives exactly 0; the contract is a strictly positive variate.
  while (value <= 0.0) value = exponential_from_uniform(uniform_open_closed(), mean);
  return value;
}

double RngStream::normal() {
  const double u1 = uniform_open_closed();
  const double u2 = uniform_open_closed();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace rtctl::sim
