#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <random>

namespace cosetlab {

/// Reproducible pseudorandom source identified by (seed, stream_index).
///
/// The engine is std::mt19937_64 seeded through std::seed_seq with the four
/// 32-bit halves of seed and stream_index; both are fully specified by the
/// standard, so output is identical across platforms. Distributions are
/// implemented here (53-bit uniforms, Box-Muller normals, rejection-sampled
/// bounded integers) because the std:: distributions are not portable.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_index);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_index() const { return stream_index_; }

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform();
  /// Standard normal.
  double normal();
  /// Real and imaginary parts independent N(0, 1/2), so E|z|^2 = 1.
  std::complex<double> complex_normal();
  /// Uniform on {0, ..., n-1}; n >= 1.
  std::uint64_t below(std::uint64_t n);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_index_;
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

/// Seed for a derived family of streams (e.g. one per tail size N).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt);

}  // namespace cosetlab
