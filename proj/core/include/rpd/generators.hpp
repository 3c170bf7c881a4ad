#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rpd/dataset.hpp"
#include "rpd/geometry.hpp"

namespace rpd {

/// Covariance of one mixture component.
class Covariance {
public:
  enum class Kind { Identity, Diagonal, Full };

  static Covariance identity() { return Covariance(Kind::Identity, {}); }
  /// Diagonal variances; all must be positive.
  static Covariance diagonal(std::vector<double> variances) {
    return Covariance(Kind::Diagonal, std::move(variances));
  }
  /// Full d x d matrix, row-major; must be symmetric positive definite.
  static Covariance full(std::vector<double> matrix) {
    return Covariance(Kind::Full, std::move(matrix));
  }

  Kind kind() const noexcept { return kind_; }
  const std::vector<double>& values() const noexcept { return values_; }

private:
  Covariance(Kind kind, std::vector<double> values) : kind_(kind), values_(std::move(values)) {}
  Kind kind_;
  std::vector<double> values_;
};

struct GaussianComponent {
  int label = 0;
  std::size_t count = 0;
  Vector mean;
  Covariance covariance = Covariance::identity();
};

/// Samples every component with its own stream derive_seed(seed, k).
/// Throws InvalidArgument for a non-SPD covariance or inconsistent sizes.
LabeledDataset gen_gaussian_mixture(std::span<const GaussianComponent> components,
                                    std::uint64_t seed);

/// n points uniform on center + radius * S^{d-1}.
PointCloud gen_sphere_uniform(std::size_t n, std::size_t dim, std::span<const double> center,
                              double radius, std::uint64_t seed);

/// floor(p * n) with a 1e-9 guard against p*n landing just below an integer.
std::size_t contamination_count(std::size_t n, double p);

struct ContaminatedSet {
  /// The target class first, then the sampled anomalies.
  PointCloud points;
  std::size_t inlier_count = 0;
  /// Row indices (into the source dataset) of the added anomalies.
  std::vector<std::size_t> anomaly_rows;
};

/// X_k plus contamination_count(n_k, p) rows drawn uniformly without
/// replacement from all other classes. Labels are dropped.
ContaminatedSet contaminate(const LabeledDataset& data, int target, double p, std::uint64_t seed);

/// K isotropic unit-variance clusters with means spacing * e_k (k < d) or,
/// when K > d, spacing times random unit vectors.
LabeledDataset separated_clusters(std::size_t classes, std::size_t dim, std::size_t per_class,
                                  double spacing, std::uint64_t seed);

/// Two Gaussian classes in R^d with covariance diag(1, r, ..., r): the
/// short axis is e_0 and the means sit at 0 and separation * e_0.
LabeledDataset anisotropic_pair(std::size_t dim, std::size_t per_class, double condition_number,
                                double separation, std::uint64_t seed);

/// 145 points from N(0, I_3) with label 0 plus 5 points from N(0, 9 I_3)
/// with label 1: a Gaussian cloud with 3% outliers.
LabeledDataset outlier_cloud_preset(std::uint64_t seed);

} // namespace rpd
