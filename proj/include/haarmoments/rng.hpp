#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace haarmoments {

/// Reproducible random stream: the same (seed, stream) pair always yields
/// the same sample sequence, and distinct stream ids are decorrelated by a
/// SplitMix64 seeding chain. Gaussians come from an explicit Box-Muller
/// transform so the sequence is identical across standard libraries.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  /// A stream derived from this one's (seed, stream) and the given id.
  RngStream substream(std::uint64_t id) const;

  std::uint64_t next_u64();

  /// Uniform on (0, 1].
  double uniform01();

  /// Standard normal via Box-Muller (second variate cached).
  double normal();

  /// re + i im with independent standard normal parts.
  std::complex<double> complex_normal();

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t stream_ = 0;
  std::mt19937_64 engine_;
  bool has_cached_ = false;
  double cached_ = 0.0;
};

inline constexpr std::uint64_t kDefaultSeed = 0x5eed5eed;

}  // namespace haarmoments
