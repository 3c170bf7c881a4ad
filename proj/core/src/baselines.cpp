#include "rpd/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "rpd/errors.hpp"

namespace rpd {

CentroidModel fit_centroids(const LabeledDataset& data) {
  if (data.empty()) {
    throw InvalidArgument("fit_centroids needs a nonempty dataset");
  }
  CentroidModel model;
  model.dim = data.dim();
  model.labels = data.class_labels();
  for (const int label : model.labels) {
    model.means.push_back(data.points_of(label).mean());
  }
  return model;
}

ScoreVector centroid_score(const CentroidModel& model, std::span<const double> x) {
  if (x.size() != model.dim) {
    throw InvalidArgument("centroid_score: point has dimension " + std::to_string(x.size()) +
                          ", model has " + std::to_string(model.dim));
  }
  if (model.means.empty()) {
    throw InvalidArgument("centroid_score: model has no classes");
  }
  ScoreVector out;
  out.distances.reserve(model.means.size());
  for (const auto& mean : model.means) {
    out.distances.push_back(euclidean_distance(x, mean));
  }
  const auto it = std::min_element(out.distances.begin(), out.distances.end());
  out.best = static_cast<std::size_t>(it - out.distances.begin());
  out.delta = *it;
  out.best_label = model.labels[out.best];
  return out;
}

std::uint64_t mann_whitney_twice_u(std::span<const double> scores, std::span<const Outcome> labels) {
  if (scores.size() != labels.size()) {
    throw InvalidArgument("auroc: " + std::to_string(scores.size()) + " scores but " +
                          std::to_string(labels.size()) + " labels");
  }
  if (std::any_of(scores.begin(), scores.end(), [](double v) { return std::isnan(v); })) {
    throw InvalidArgument("auroc: scores contain NaN");
  }
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Twice the midrank of a tie group occupying 1-based ranks [lo, hi] is lo + hi.
  std::uint64_t twice_rank_sum = 0;
  std::uint64_t positives = 0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) {
      ++j;
    }
    const std::uint64_t twice_midrank = static_cast<std::uint64_t>(i + 1 + j + 1);
    for (std::size_t k = i; k <= j; ++k) {
      if (labels[order[k]] == Outcome::Positive) {
        twice_rank_sum += twice_midrank;
        ++positives;
      }
    }
    i = j + 1;
  }
  return twice_rank_sum - positives * (positives + 1);
}

double auroc(std::span<const double> scores, std::span<const Outcome> labels) {
  const auto positives = static_cast<std::uint64_t>(
      std::count(labels.begin(), labels.end(), Outcome::Positive));
  const std::uint64_t negatives = labels.size() - positives;
  if (positives == 0 || negatives == 0) {
    throw InvalidArgument("auroc needs at least one positive and one negative");
  }
  const std::uint64_t twice_u = mann_whitney_twice_u(scores, labels);
  return static_cast<double>(twice_u) / (2.0 * static_cast<double>(positives) *
                                         static_cast<double>(negatives));
}

} // namespace rpd
