#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace rtctl::sim {

enum class StreamId : std::uint32_t {
  Interarrival = 0,
  Service = 1,
};

/// Name of the uniform generator recorded in every output header.
inline constexpr std::string_view kGeneratorName = "mt19937_64 (sub-seeded by splitmix64)";

/// One step of SplitMix64; used to derive independent sub-seeds.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

/// Sub-seed for a given (master seed, stream id) pair.
std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::uint32_t stream_id) noexcept;

/// mean * -ln(u) for u in (0, 1]. Throws std::invalid_argument if mean <= 0.
double exponential_from_uniform(double u, double mean);

/// Seeded variate stream. Identical (seed, stream id) pairs reproduce the
/// identical sequence on every platform, since std::mt19937_64 output is fixed
/// by the standard and the uniform mapping below is done by hand.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint32_t stream_id);
  RngStream(std::uint64_t seed, StreamId stream_id)
      : RngStream(seed, static_cast<std::uint32_t>(stream_id)) {}

  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
  [[nodiscard]] std::uint32_t stream_id() const noexcept { return stream_id_; }

  /// Uniform on (0, 1] with 53 bits of resolution.
  double uniform_open_closed();

  /// Exp(mean) variate; strictly positive.
  double exponential(double mean);

  /// Standard normal variate (Box-Muller on two uniforms).
  double normal();

 private:
  std::uint64_t seed_;
  std::uint32_t stream_id_;
  std::mt19937_64 engine_;
};

/// Convenience wrapper matching the kernel's sampling operation.
inline double sample_exponential(RngStream& stream, double mean) { return stream.exponential(mean); }

}  // namespace rtctl::sim
