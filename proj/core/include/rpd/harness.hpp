#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rpd/dataset.hpp"
#include "rpd/descriptor.hpp"
#include "rpd/geometry.hpp"

namespace rpd {

struct AucRow {
  /// Class the AUC is about; -1 for whole-model rows (OOD).
  int label = 0;
  std::string method;
  std::vector<std::uint64_t> seeds;
  std::vector<double> per_seed;
  double mean = 0.0;
  /// Population variance over seeds.
  double variance = 0.0;
};

struct Histogram {
  std::string population;
  std::uint64_t seed = 0;
  std::vector<double> edges;
  std::vector<std::size_t> counts;
};

struct PopulationStats {
  std::string population;
  std::uint64_t seed = 0;
  std::size_t count = 0;
  double mean = 0.0;
  double variance = 0.0;
  double min = 0.0;
  double max = 0.0;
  /// Share of values <= 1 + kDefaultTolerance.
  double fraction_within = 0.0;
};

struct GridPoint {
  std::size_t m = 0;
  std::size_t d = 0;
  std::uint64_t seed = 0;
  int label = 0;
  double auc = 0.0;
};

struct GridCell {
  std::size_t m = 0;
  std::size_t d = 0;
  double mean_auc = 0.0;
  double median_auc = 0.0;
};

struct Timing {
  std::string name;
  double seconds = 0.0;
};

struct EvalReport {
  std::string protocol;
  nlohmann::json config;
  std::vector<AucRow> aucs;
  std::vector<int> confusion_labels;
  std::vector<std::vector<double>> confusion;
  std::vector<Histogram> histograms;
  std::vector<PopulationStats> populations;
  std::vector<GridPoint> grid;
  std::vector<GridCell> grid_summary;
  std::vector<Timing> timings;
};

struct SeparationConfig {
  std::size_t m = 640;
  std::size_t ell = 1;
  CenterPolicy policy = CenterPolicy::SampleMean;
  std::vector<std::uint64_t> seeds{0};
  bool shared_directions = false;
  std::size_t barycenter_samples = 500;
  /// Containment tolerance for the confusion matrix.
  double tolerance = kDefaultTolerance;
  unsigned threads = 0;
};

/// For each class k and seed: fit P_k on the training points of k and the
/// class mean, score the whole test set, AUC with the non-k points positive.
EvalReport run_class_separation(const LabeledDataset& train, const LabeledDataset& test,
                                const SeparationConfig& config);

struct AnomalyConfig {
  double p = 0.02;
  std::size_t m = 640;
  std::size_t ell = 2;
  CenterPolicy policy = CenterPolicy::SampleMean;
  std::vector<std::uint64_t> seeds{0};
  /// Empty means every class of the training set.
  std::vector<int> target_classes;
  std::size_t barycenter_samples = 500;
  unsigned threads = 0;
};

/// Contaminates each target class with floor(p n_k) points of the other
/// classes, fits a single-class descriptor (and a mean) to it and scores the
/// test set; anomalies (test label != k) are the positives.
EvalReport run_anomaly_detection(const LabeledDataset& train, const LabeledDataset& test,
                                 const AnomalyConfig& config);

struct GridDataset {
  LabeledDataset train;
  LabeledDataset test;
};

struct GridConfig {
  double p = 0.02;
  std::size_t ell = 2;
  std::vector<std::size_t> m_values{160, 320, 640, 1280};
  CenterPolicy policy = CenterPolicy::SampleMean;
  std::vector<std::uint64_t> seeds{0};
  std::vector<int> target_classes;
  unsigned threads = 0;
};

/// run_anomaly_detection at every (m, dataset) pair. One dataset per
/// embedding dimension d.
EvalReport run_sensitivity_grid(const std::vector<GridDataset>& datasets,
                                const GridConfig& config);

/// max(640, 40 d).
std::size_t default_ood_directions(std::size_t dim);

struct OodConfig {
  std::size_t ell = 1;
  /// Unset means default_ood_directions(d).
  std::optional<std::size_t> m;
  CenterPolicy policy = CenterPolicy::SampleMean;
  std::vector<std::uint64_t> seeds{0};
  std::size_t bins = 50;
  bool shared_directions = false;
  std::size_t barycenter_samples = 500;
  unsigned threads = 0;
};

/// Fits per-class descriptors on in-distribution training data and reports
/// delta for the in-distribution test set and the OOD set: histograms on
/// shared edges, population statistics and an AUC (OOD positive) for delta
/// and for the nearest-centroid distance.
EvalReport run_ood_detection(const LabeledDataset& in_train, const LabeledDataset& in_test,
                             const PointCloud& ood_test, const OodConfig& config);

/// `count` random vertices of P, vertex i drawn with derive_seed(seed, i).
PointCloud sample_boundary_points(const HPolytope& polytope, std::size_t count,
                                  std::uint64_t seed);

/// Equal-width bins over [0, ceil(max value)] (upper edge 1 when every
/// value is 0). The maximum falls in the last bin.
std::vector<double> histogram_edges(double max_value, std::size_t bins);
std::vector<std::size_t> histogram_counts(const std::vector<double>& values,
                                          const std::vector<double>& edges);

PopulationStats population_stats(std::string name, std::uint64_t seed,
                                 const std::vector<double>& values);

/// The report as JSON. Timings sit under their own "timings" key and are
/// left out unless requested, so reruns compare equal.
nlohmann::json to_json(const EvalReport& report, bool include_timings = false);

/// Flat CSV of grid points: m,d,seed,class,auc.
std::string grid_csv(const EvalReport& report);
/// Flat CSV of AUC rows: class,method,seed,auc.
std::string auc_csv(const EvalReport& report);

} // namespace rpd
