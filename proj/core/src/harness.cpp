#include "rpd/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "rpd/baselines.hpp"
#include "rpd/errors.hpp"
#include "rpd/generators.hpp"
#include "rpd/parallel.hpp"
#include "rpd/polytope_ops.hpp"
#include "rpd/random.hpp"

namespace rpd {

namespace {

constexpr std::uint64_t kContaminationStream = 2;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void fill_moments(AucRow& row) {
  const double n = static_cast<double>(row.per_seed.size());
  double sum = 0.0;
  for (const double v : row.per_seed) {
    sum += v;
  }
  row.mean = sum / n;
  double sq = 0.0;
  for (const double v : row.per_seed) {
    sq += (v - row.mean) * (v - row.mean);
  }
  row.variance = sq / n;
}

std::vector<Outcome> outcomes_against(const LabeledDataset& test, int normal_label) {
  std::vector<Outcome> out(test.size());
  for (std::size_t i = 0; i < test.size(); ++i) {
    out[i] = test.label(i) == normal_label ? Outcome::Negative : Outcome::Positive;
  }
  return out;
}

Vector score_all(const HPolytope& polytope, const LabeledDataset& data, unsigned threads) {
  Vector out(data.size());
  constexpr std::size_t kChunk = 256;
  const std::size_t chunks = (data.size() + kChunk - 1) / kChunk;
  parallel_for(chunks, threads, [&](std::size_t c) {
    const std::size_t end = std::min(data.size(), (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) {
      out[i] = scaling_distance(polytope, data[i]);
    }
  });
  return out;
}

Vector distances_to(std::span<const double> mean, const LabeledDataset& data) {
  Vector out(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    out[i] = euclidean_distance(data[i], mean);
  }
  return out;
}

void require_same_dim(const LabeledDataset& a, const LabeledDataset& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw InvalidArgument(std::string(what) + ": training data has d = " + std::to_string(a.dim()) +
                          ", test data has d = " + std::to_string(b.dim()));
  }
}

void require_seeds(const std::vector<std::uint64_t>& seeds) {
  if (seeds.empty()) {
    throw InvalidArgument("at least one seed is required");
  }
}

std::size_t index_in(const std::vector<int>& labels, int label) {
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) {
    throw InvalidArgument("class " + std::to_string(label) + " is not in the training data");
  }
  return static_cast<std::size_t>(it - labels.begin());
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

} // namespace

EvalReport run_class_separation(const LabeledDataset& train, const LabeledDataset& test,
                                const SeparationConfig& config) {
  require_same_dim(train, test, "class separation");
  require_seeds(config.seeds);
  EvalReport report;
  report.protocol = "separation";
  report.config = {{"m", config.m},
                   {"ell", config.ell},
                   {"policy", std::string(to_string(config.policy))},
                   {"seeds", config.seeds},
                   {"shared_Y", config.shared_directions},
                   {"barycenter_samples", config.barycenter_samples},
                   {"tolerance", config.tolerance},
                   {"d", train.dim()},
                   {"n_train", train.size()},
                   {"n_test", test.size()}};

  const std::vector<int> labels = train.class_labels();
  const std::size_t K = labels.size();
  std::vector<AucRow> rpd_rows(K);
  std::vector<AucRow> centroid_rows(K);

  const auto fit_start = Clock::now();
  double fit_seconds = 0.0;
  double score_seconds = 0.0;
  const CentroidModel centroids = fit_centroids(train);
  for (const std::uint64_t seed : config.seeds) {
    FitOptions opts;
    opts.m = config.m;
    opts.ell = config.ell;
    opts.policy = config.policy;
    opts.seed = seed;
    opts.shared_directions = config.shared_directions;
    opts.barycenter_samples = config.barycenter_samples;
    opts.threads = config.threads;
    auto t0 = Clock::now();
    const RpdModel model = fit_model(train, opts);
    fit_seconds += seconds_since(t0);
    if (report.confusion.empty()) {
      report.confusion_labels = labels;
      report.confusion = confusion_matrix(model, train, config.tolerance);
    }
    t0 = Clock::now();
    for (std::size_t k = 0; k < K; ++k) {
      const std::vector<Outcome> truth = outcomes_against(test, labels[k]);
      const Vector sd = score_all(model.class_at(k).polytope, test, config.threads);
      rpd_rows[k].seeds.push_back(seed);
      rpd_rows[k].per_seed.push_back(auroc(sd, truth));
      const Vector ed = distances_to(centroids.means[k], test);
      centroid_rows[k].seeds.push_back(seed);
      centroid_rows[k].per_seed.push_back(auroc(ed, truth));
    }
    score_seconds += seconds_since(t0);
  }
  for (std::size_t k = 0; k < K; ++k) {
    rpd_rows[k].label = centroid_rows[k].label = labels[k];
    rpd_rows[k].method = "rpd";
    centroid_rows[k].method = "centroid";
    fill_moments(rpd_rows[k]);
    fill_moments(centroid_rows[k]);
    report.aucs.push_back(std::move(rpd_rows[k]));
    report.aucs.push_back(std::move(centroid_rows[k]));
  }
  report.timings = {{"fit", fit_seconds},
                    {"score", score_seconds},
                    {"total", seconds_since(fit_start)}};
  return report;
}

EvalReport run_anomaly_detection(const LabeledDataset& train, const LabeledDataset& test,
                                 const AnomalyConfig& config) {
  require_same_dim(train, test, "anomaly detection");
  require_seeds(config.seeds);
  if (config.m == 0 || config.ell == 0) {
    throw InvalidArgument("anomaly detection needs m >= 1 and ell >= 1");
  }
  const std::vector<int> labels = train.class_labels();
  const std::vector<int> targets = config.target_classes.empty() ? labels : config.target_classes;

  EvalReport report;
  report.protocol = "anomaly";
  report.config = {{"p", config.p},
                   {"m", config.m},
                   {"ell", config.ell},
                   {"policy", std::string(to_string(config.policy))},
                   {"seeds", config.seeds},
                   {"target_classes", targets},
                   {"barycenter_samples", config.barycenter_samples},
                   {"d", train.dim()},
                   {"n_train", train.size()},
                   {"n_test", test.size()}};

  const std::size_t S = config.seeds.size();
  const std::size_t jobs = targets.size() * S;
  std::vector<double> rpd_auc(jobs);
  std::vector<double> centroid_auc(jobs);
  std::vector<double> fit_time(jobs);
  std::vector<double> score_time(jobs);
  const auto start = Clock::now();
  parallel_for(jobs, config.threads, [&](std::size_t job) {
    const int target = targets[job / S];
    const std::uint64_t seed = config.seeds[job % S];
    const std::uint64_t class_seed = derive_seed(seed, index_in(labels, target));
    auto t0 = Clock::now();
    const ContaminatedSet mixed =
        contaminate(train, target, config.p, derive_seed(class_seed, kContaminationStream));
    const DirectionSet dirs = sample_unit_directions(config.m, train.dim(), class_seed);
    const ClassDescriptor desc = fit_class(mixed.points, target, dirs, config.ell, config.policy,
                                           config.barycenter_samples, class_seed);
    fit_time[job] = seconds_since(t0);
    t0 = Clock::now();
    const std::vector<Outcome> truth = outcomes_against(test, target);
    rpd_auc[job] = auroc(score_all(desc.polytope, test, 1), truth);
    centroid_auc[job] = auroc(distances_to(mixed.points.mean(), test), truth);
    score_time[job] = seconds_since(t0);
  });

  for (std::size_t t = 0; t < targets.size(); ++t) {
    AucRow rpd_row{targets[t], "rpd", config.seeds, {}, 0.0, 0.0};
    AucRow centroid_row{targets[t], "centroid", config.seeds, {}, 0.0, 0.0};
    for (std::size_t s = 0; s < S; ++s) {
      rpd_row.per_seed.push_back(rpd_auc[t * S + s]);
      centroid_row.per_seed.push_back(centroid_auc[t * S + s]);
    }
    fill_moments(rpd_row);
    fill_moments(centroid_row);
    report.aucs.push_back(std::move(rpd_row));
    report.aucs.push_back(std::move(centroid_row));
  }
  double fit_total = 0.0;
  double score_total = 0.0;
  for (std::size_t j = 0; j < jobs; ++j) {
    fit_total += fit_time[j];
    score_total += score_time[j];
  }
  report.timings = {{"fit", fit_total}, {"score", score_total}, {"total", seconds_since(start)}};
  return report;
}

EvalReport run_sensitivity_grid(const std::vector<GridDataset>& datasets,
                                const GridConfig& config) {
  if (datasets.empty() || config.m_values.empty()) {
    throw InvalidArgument("sensitivity grid needs at least one m value and one dataset");
  }
  require_seeds(config.seeds);
  EvalReport report;
  report.protocol = "grid";
  std::vector<std::size_t> dims;
  for (const auto& ds : datasets) {
    dims.push_back(ds.train.dim());
  }
  report.config = {{"p", config.p},
                   {"ell", config.ell},
                   {"m_values", config.m_values},
                   {"d_values", dims},
                   {"policy", std::string(to_string(config.policy))},
                   {"seeds", config.seeds},
                   {"target_classes", config.target_classes}};

  const auto start = Clock::now();
  for (const auto& ds : datasets) {
    for (const std::size_t m : config.m_values) {
      AnomalyConfig ac;
      ac.p = config.p;
      ac.m = m;
      ac.ell = config.ell;
      ac.policy = config.policy;
      ac.seeds = config.seeds;
      ac.target_classes = config.target_classes;
      ac.threads = config.threads;
      const EvalReport one = run_anomaly_detection(ds.train, ds.test, ac);
      std::vector<double> cell;
      for (const AucRow& row : one.aucs) {
        if (row.method != "rpd") {
          continue;
        }
        for (std::size_t s = 0; s < row.per_seed.size(); ++s) {
          report.grid.push_back({m, ds.train.dim(), row.seeds[s], row.label, row.per_seed[s]});
          cell.push_back(row.per_seed[s]);
        }
      }
      double sum = 0.0;
      for (const double v : cell) {
        sum += v;
      }
      report.grid_summary.push_back(
          {m, ds.train.dim(), sum / static_cast<double>(cell.size()), median_of(cell)});
      report.timings.push_back({"m=" + std::to_string(m) + ",d=" + std::to_string(ds.train.dim()),
                                one.timings.back().seconds});
    }
  }
  report.timings.push_back({"total", seconds_since(start)});
  return report;
}

std::size_t default_ood_directions(std::size_t dim) { return std::max<std::size_t>(640, 40 * dim); }

EvalReport run_ood_detection(const LabeledDataset& in_train, const LabeledDataset& in_test,
                             const PointCloud& ood_test, const OodConfig& config) {
  require_same_dim(in_train, in_test, "OOD detection");
  require_seeds(config.seeds);
  if (ood_test.dim() != in_train.dim()) {
    throw InvalidArgument("OOD detection: OOD data has d = " + std::to_string(ood_test.dim()) +
                          ", training data has d = " + std::to_string(in_train.dim()));
  }
  if (in_test.empty() || ood_test.empty()) {
    throw InvalidArgument("OOD detection needs nonempty in-distribution and OOD test sets");
  }
  const std::size_t m = config.m.value_or(default_ood_directions(in_train.dim()));
  EvalReport report;
  report.protocol = "ood";
  report.config = {{"m", m},
                   {"m_rule", config.m ? "explicit" : "max(640,40d)"},
                   {"ell", config.ell},
                   {"policy", std::string(to_string(config.policy))},
                   {"seeds", config.seeds},
                   {"bins", config.bins},
                   {"shared_Y", config.shared_directions},
                   {"barycenter_samples", config.barycenter_samples},
                   {"d", in_train.dim()},
                   {"n_train", in_train.size()},
                   {"n_test", in_test.size()},
                   {"n_ood", ood_test.size()}};

  // Pooled in-distribution test rows followed by the OOD rows.
  std::vector<double> pooled(in_test.features().begin(), in_test.features().end());
  pooled.insert(pooled.end(), ood_test.coordinates().begin(), ood_test.coordinates().end());
  const std::size_t n_in = in_test.size();
  const std::size_t n_all = n_in + ood_test.size();
  const PointCloud queries(in_train.dim(), std::move(pooled));
  std::vector<Outcome> truth(n_all, Outcome::Negative);
  std::fill(truth.begin() + static_cast<std::ptrdiff_t>(n_in), truth.end(), Outcome::Positive);

  const CentroidModel centroids = fit_centroids(in_train);
  Vector euclid(n_all);
  for (std::size_t i = 0; i < n_all; ++i) {
    euclid[i] = centroid_score(centroids, queries[i]).delta;
  }
  AucRow rpd_row{-1, "rpd", {}, {}, 0.0, 0.0};
  AucRow centroid_row{-1, "centroid", {}, {}, 0.0, 0.0};

  double fit_seconds = 0.0;
  double score_seconds = 0.0;
  std::size_t scored = 0;
  for (const std::uint64_t seed : config.seeds) {
    FitOptions opts;
    opts.m = m;
    opts.ell = config.ell;
    opts.policy = config.policy;
    opts.seed = seed;
    opts.shared_directions = config.shared_directions;
    opts.barycenter_samples = config.barycenter_samples;
    opts.threads = config.threads;
    auto t0 = Clock::now();
    const RpdModel model = fit_model(in_train, opts);
    fit_seconds += seconds_since(t0);

    t0 = Clock::now();
    Vector delta(n_all);
    parallel_for(n_all, config.threads,
                 [&](std::size_t i) { delta[i] = score(model, queries[i]).delta; });
    Vector train_delta(in_train.size());
    parallel_for(in_train.size(), config.threads,
                 [&](std::size_t i) { train_delta[i] = score(model, in_train[i]).delta; });
    score_seconds += seconds_since(t0);
    scored += n_all + in_train.size();

    rpd_row.seeds.push_back(seed);
    rpd_row.per_seed.push_back(auroc(delta, truth));
    centroid_row.seeds.push_back(seed);
    centroid_row.per_seed.push_back(auroc(euclid, truth));

    const Vector in_delta(delta.begin(), delta.begin() + static_cast<std::ptrdiff_t>(n_in));
    const Vector ood_delta(delta.begin() + static_cast<std::ptrdiff_t>(n_in), delta.end());
    const std::vector<double> edges =
        histogram_edges(*std::max_element(delta.begin(), delta.end()), config.bins);
    report.histograms.push_back({"in-distribution", seed, edges, histogram_counts(in_delta, edges)});
    report.histograms.push_back({"ood", seed, edges, histogram_counts(ood_delta, edges)});
    report.populations.push_back(population_stats("in-distribution-train", seed, train_delta));
    report.populations.push_back(population_stats("in-distribution", seed, in_delta));
    report.populations.push_back(population_stats("ood", seed, ood_delta));
  }

  // Raw Euclidean distances to the nearest class mean; they do not depend
  // on the seed.
  const Vector in_euclid(euclid.begin(), euclid.begin() + static_cast<std::ptrdiff_t>(n_in));
  const Vector ood_euclid(euclid.begin() + static_cast<std::ptrdiff_t>(n_in), euclid.end());
  const std::vector<double> e_edges =
      histogram_edges(*std::max_element(euclid.begin(), euclid.end()), config.bins);
  report.histograms.push_back(
      {"in-distribution-euclidean", 0, e_edges, histogram_counts(in_euclid, e_edges)});
  report.histograms.push_back({"ood-euclidean", 0, e_edges, histogram_counts(ood_euclid, e_edges)});

  fill_moments(rpd_row);
  fill_moments(centroid_row);
  report.aucs.push_back(std::move(rpd_row));
  report.aucs.push_back(std::move(centroid_row));
  report.timings = {{"fit", fit_seconds},
                    {"score", score_seconds},
                    {"score_per_sample", score_seconds / static_cast<double>(scored)}};
  return report;
}

PointCloud sample_boundary_points(const HPolytope& polytope, std::size_t count,
                                  std::uint64_t seed) {
  if (count == 0) {
    throw InvalidArgument("sample_boundary_points needs count >= 1");
  }
  std::vector<double> coords;
  coords.reserve(count * polytope.dim());
  for (std::size_t i = 0; i < count; ++i) {
    const Vector v = random_vertex(polytope, derive_seed(seed, i));
    coords.insert(coords.end(), v.begin(), v.end());
  }
  return PointCloud(polytope.dim(), std::move(coords));
}

} // namespace rpd
