#include "rpd/random.hpp"

#include <cmath>

#include "rpd/linalg.hpp"

namespace rpd {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(master) ^ (stream * 0xd6e8feb86659fd93ULL + 0x632be59bd9b4e019ULL));
}

double Rng::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::size_t Rng::uniform_index(std::size_t n) {
  if (n <= 1) {
    return 0;
  }
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  // Smallest all-ones mask covering n - 1.
  std::uint64_t mask = bound - 1;
  mask |= mask >> 1;
  mask |= mask >> 2;
  mask |= mask >> 4;
  mask |= mask >> 8;
  mask |= mask >> 16;
  mask |= mask >> 32;
  while (true) {
    const std::uint64_t v = engine_() & mask;
    if (v < bound) {
      return static_cast<std::size_t>(v);
    }
  }
}

double Rng::gaussian() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_gaussian_;
  }
  double u = 0.0;
  double v = 0.0;
  double s = 0.0;
  do {
    u = 2.0 * uniform01() - 1.0;
    v = 2.0 * uniform01() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  cached_gaussian_ = v * factor;
  has_cached_ = true;
  return u * factor;
}

void Rng::unit_vector(std::span<double> out) {
  double norm = 0.0;
  do {
    for (double& x : out) {
      x = gaussian();
    }
    norm = euclidean_norm(out);
  } while (norm < 1e-300);
  for (double& x : out) {
    x /= norm;
  }
}

} // namespace rpd
