#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace viewscout {

// Deterministic random stream. All randomness in the library flows through
// this wrapper so that replay only depends on the seed, never on the standard
// library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  int next_bit() { return static_cast<int>(engine_() & 1u); }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi); returns lo when the interval is empty.
  double uniform(double lo, double hi) { return lo + next_double() * (hi - lo); }

  // Inverse-CDF draw over non-negative weights (need not be normalized).
  // Consumes exactly one value from the stream.
  int sample(std::span<const double> weights);

  // Derives an independent child seed so separate concerns (tie-breaking,
  // axis sampling, position sampling) each get their own stream.
  static std::uint64_t derive(std::uint64_t root_seed, std::uint64_t stream_tag);

 private:
  std::mt19937_64 engine_;
};

inline constexpr std::uint64_t kTieBreakStream = 0x7165;
inline constexpr std::uint64_t kAxisSampleStream = 0xa551;
inline constexpr std::uint64_t kPositionStream = 0x505e;

}  // namespace viewscout
