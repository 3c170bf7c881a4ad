#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rpd/dataset.hpp"
#include "rpd/score_vector.hpp"

namespace rpd {

/// Supervised nearest-centroid model: one arithmetic mean per class.
/// This is the "k-means classifier" baseline: class means come from the
/// labels, there is no Lloyd iteration.
struct CentroidModel {
  std::size_t dim = 0;
  std::vector<int> labels;
  std::vector<Vector> means;
};

CentroidModel fit_centroids(const LabeledDataset& data);

/// Euclidean distance to every class mean plus the minimum (ties to the
/// smallest class index).
ScoreVector centroid_score(const CentroidModel& model, std::span<const double> x);

enum class Outcome : std::uint8_t { Negative = 0, Positive = 1 };

/// Mann-Whitney U of the positives with midranks for ties, in half units
/// so that it is an exact integer: returns 2U. U + U' = P*N exactly, where
/// U' is the statistic for the negated scores.
std::uint64_t mann_whitney_twice_u(std::span<const double> scores, std::span<const Outcome> labels);

/// Area under the ROC curve: probability that a random positive scores
/// above a random negative, ties counted 1/2. Higher score = more anomalous;
/// anomalies are the positives. O(n log n). Throws InvalidArgument unless
/// both outcomes occur, or if a score is NaN.
double auroc(std::span<const double> scores, std::span<const Outcome> labels);

} // namespace rpd
