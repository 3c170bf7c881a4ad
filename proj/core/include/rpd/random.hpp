#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

namespace rpd {

/// Mixes a master seed and a stream index into an independent child seed.
/// SplitMix64 finalizer applied to (master, stream); used everywhere a
/// per-class, per-trial or per-sample seed is needed so results do not
/// depend on evaluation order.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept;

/// Portable seeded generator.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The distributions are implemented here instead of using the
/// <random> ones, whose algorithms are implementation-defined:
///   - uniform01: top 53 bits of one engine draw, times 2^-53, in [0, 1)
///   - uniform_index: rejection sampling on the top bits, no modulo bias
///   - gaussian: Marsaglia polar method, second variate cached
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  double uniform01();
  /// Uniform integer in [0, n). n must be positive.
  std::size_t uniform_index(std::size_t n);
  double gaussian();
  /// Fills `out` with a uniformly distributed point of the unit sphere
  /// S^{out.size()-1} (normalized standard Gaussian vector).
  void unit_vector(std::span<double> out);

private:
  std::mt19937_64 engine_;
  double cached_gaussian_ = 0.0;
  bool has_cached_ = false;
};

} // namespace rpd
