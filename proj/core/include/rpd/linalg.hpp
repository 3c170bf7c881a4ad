#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace rpd {

using Vector = std::vector<double>;

/// Scalar product with a fixed summation order that depends only on the
/// length. The same pair of vectors gives the same bits wherever they live
/// in memory, which keeps offsets and containment tests consistent between
/// direction sets that share rows.
inline double dot(std::span<const double> a, std::span<const double> b) noexcept {
  const std::size_t n = a.size();
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += a[i] * b[i];
    s1 += a[i + 1] * b[i + 1];
    s2 += a[i + 2] * b[i + 2];
    s3 += a[i + 3] * b[i + 3];
  }
  for (; i < n; ++i) {
    s0 += a[i] * b[i];
  }
  return (s0 + s1) + (s2 + s3);
}

inline double euclidean_norm(std::span<const double> a) noexcept { return std::sqrt(dot(a, a)); }

inline double euclidean_distance(std::span<const double> a, std::span<const double> b) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double t = a[i] - b[i];
    s += t * t;
  }
  return std::sqrt(s);
}

} // namespace rpd
