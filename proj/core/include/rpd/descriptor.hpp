#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "rpd/dataset.hpp"
#include "rpd/geometry.hpp"
#include "rpd/lp.hpp"
#include "rpd/score_vector.hpp"

namespace rpd {

/// One class of a fitted model: its polytope with an interior central point.
struct ClassDescriptor {
  int label = 0;
  std::size_t count = 0;
  HPolytope polytope;
  /// Set when the requested center was not strictly interior and the
  /// Chebyshev center was used instead.
  bool fallback_applied = false;
};

struct FitOptions {
  std::size_t m = 640;
  std::size_t ell = 1;
  CenterPolicy policy = CenterPolicy::SampleMean;
  std::uint64_t seed = 0;
  /// One direction set for all classes instead of a fresh one per class.
  bool shared_directions = false;
  /// Random vertices averaged by the vertex-barycenter policy.
  std::size_t barycenter_samples = 500;
  unsigned threads = 0;
  LpOptions lp;
};

/// Builds one class descriptor: offsets from fit_rpd, then a central point
/// per `policy`. Sample-mean and vertex-barycenter centers that are not
/// strictly interior are replaced by the Chebyshev center. Throws
/// NotInteriorError if even the Chebyshev radius is zero.
ClassDescriptor fit_class(const PointCloud& points, int label, const DirectionSet& directions,
                          std::size_t ell, CenterPolicy policy, std::size_t barycenter_samples,
                          std::uint64_t seed, const LpOptions& lp = {});

class RpdModel {
public:
  RpdModel() = default;
  /// Validates that every class shares dim and m and has an interior center.
  RpdModel(std::size_t dim, std::size_t m, std::size_t ell, std::uint64_t seed,
           bool shared_directions, CenterPolicy policy, std::vector<ClassDescriptor> classes);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t directions_per_class() const noexcept { return m_; }
  std::size_t ell() const noexcept { return ell_; }
  std::uint64_t seed() const noexcept { return seed_; }
  bool shared_directions() const noexcept { return shared_; }
  CenterPolicy policy() const noexcept { return policy_; }
  std::size_t class_count() const noexcept { return classes_.size(); }
  const std::vector<ClassDescriptor>& classes() const noexcept { return classes_; }
  const ClassDescriptor& class_at(std::size_t index) const { return classes_.at(index); }
  std::optional<std::size_t> index_of(int label) const noexcept;

private:
  std::size_t dim_ = 0;
  std::size_t m_ = 0;
  std::size_t ell_ = 1;
  std::uint64_t seed_ = 0;
  bool shared_ = false;
  CenterPolicy policy_ = CenterPolicy::SampleMean;
  std::vector<ClassDescriptor> classes_;
};

/// Per-class descriptors over the classes of `data` in ascending label
/// order. Class k uses directions from derive_seed(seed, k) unless
/// shared_directions is set.
RpdModel fit_model(const LabeledDataset& data, const FitOptions& options);

/// Scaling distance to every class polytope, and their minimum delta.
ScoreVector score(const RpdModel& model, std::span<const double> x);

/// Label of the nearest polytope if delta <= reject_threshold, otherwise
/// nullopt (REJECT). An infinite threshold never rejects.
std::optional<int> classify(const RpdModel& model, std::span<const double> x,
                            double reject_threshold = 1.0);

/// (|X_k in P_j| + |X_j in P_k|) / (n_k + n_j), membership by contains().
double confusion_coefficient(const RpdModel& model, const LabeledDataset& data, int k, int j,
                             double tol = kDefaultTolerance);

/// Symmetric matrix of confusion coefficients over the model's classes;
/// the diagonal is zero.
std::vector<std::vector<double>> confusion_matrix(const RpdModel& model,
                                                  const LabeledDataset& data,
                                                  double tol = kDefaultTolerance);

} // namespace rpd
