#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string_view>

#include "rpd/baselines.hpp"
#include "rpd/dataset.hpp"
#include "rpd/descriptor.hpp"
#include "rpd/errors.hpp"
#include "rpd/generators.hpp"
#include "rpd/harness.hpp"
#include "rpd/model_io.hpp"
#include "rpd/polytope_ops.hpp"
#include "rpd/random.hpp"

namespace rpd::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void log(const std::string& line) { std::cerr << "rpd: " << line << '\n'; }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open " + path + " for writing");
  }
  out << text;
  if (!out.flush()) {
    throw IoError("write to " + path + " failed");
  }
}

CenterPolicy policy_from(const std::string& name) {
  const CenterPolicy p = parse_center_policy(name);
  if (p == CenterPolicy::UserSupplied) {
    throw InvalidArgument("policy user-supplied cannot be fitted; use sample-mean, chebyshev or "
                          "vertex-barycenter");
  }
  return p;
}

void write_report(const EvalReport& report, const EvalCommon& common) {
  write_text(common.out_json, to_json(report).dump(2) + "\n");
  if (!common.out_csv.empty()) {
    write_text(common.out_csv, report.protocol == "grid" ? grid_csv(report) : auc_csv(report));
  }
  nlohmann::json timings = nlohmann::json::object();
  for (const auto& t : report.timings) {
    timings[t.name] = t.seconds;
    log("time " + t.name + " " + format_double(t.seconds) + " s");
  }
  if (!common.timings_out.empty()) {
    write_text(common.timings_out, timings.dump(2) + "\n");
  }
  for (const auto& row : report.aucs) {
    log("auc class " + std::to_string(row.label) + " " + row.method + " mean " +
        format_double(row.mean));
  }
}

void log_class_sizes(const LabeledDataset& data, const char* what) {
  for (const int label : data.class_labels()) {
    log(std::string(what) + " class " + std::to_string(label) + " n=" +
        std::to_string(data.count(label)));
  }
}

// First `train` rows of every class to one set, the rest to the other.
std::pair<LabeledDataset, LabeledDataset> split_per_class(const LabeledDataset& all,
                                                          std::size_t train) {
  LabeledDataset a(all.dim(), {}, {});
  LabeledDataset b(all.dim(), {}, {});
  for (const int label : all.class_labels()) {
    const auto rows = all.indices_of(label);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      (r < train ? a : b).append(all[rows[r]], label);
    }
  }
  return {std::move(a), std::move(b)};
}

Vector center_or_origin(const std::vector<double>& center, std::size_t dim) {
  if (center.empty()) {
    return Vector(dim, 0.0);
  }
  if (center.size() != dim) {
    throw InvalidArgument("--center has " + std::to_string(center.size()) +
                          " coordinates, expected " + std::to_string(dim));
  }
  return center;
}

} // namespace

double effective_tolerance() {
  const char* env = std::getenv("RPD_TOLERANCE");
  if (env == nullptr || *env == '\0') {
    return kDefaultTolerance;
  }
  const std::string_view text(env);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value) ||
      value <= 0.0) {
    throw InvalidArgument("RPD_TOLERANCE must be a positive number, got '" + std::string(text) +
                          "'");
  }
  return value;
}

void run_fit(const FitArgs& args) {
  const double tol = effective_tolerance();
  const LabeledDataset train = load_csv(args.train);
  log_class_sizes(train, "fit");
  FitOptions opts;
  opts.m = args.m;
  opts.ell = args.ell;
  opts.policy = policy_from(args.policy);
  opts.seed = args.seed;
  opts.shared_directions = args.shared_y;
  opts.barycenter_samples = args.barycenter_samples;
  opts.threads = args.threads;
  opts.lp.feasibility_tol = tol;
  const auto t0 = Clock::now();
  const RpdModel model = fit_model(train, opts);
  const double elapsed = seconds_since(t0);
  for (const auto& c : model.classes()) {
    if (c.fallback_applied) {
      log("class " + std::to_string(c.label) + ": " + args.policy +
          " center not interior, fell back to chebyshev");
    }
  }
  log("fit " + std::to_string(model.class_count()) + " classes in " + format_double(elapsed) +
      " s");
  save_model(model, args.out);
}

void run_score(const ScoreArgs& args) {
  const RpdModel model = load_model(args.model);
  const LabeledDataset data = load_csv(args.data);
  if (data.dim() != model.dim()) {
    throw InvalidArgument("data has d = " + std::to_string(data.dim()) + ", model has d = " +
                          std::to_string(model.dim()));
  }
  std::ostringstream out;
  out << "row,label";
  for (const auto& c : model.classes()) {
    out << ",sd_" << c.label;
  }
  out << ",delta,predicted\n";
  std::size_t rejected = 0;
  const auto t0 = Clock::now();
  for (std::size_t i = 0; i < data.size(); ++i) {
    const ScoreVector s = score(model, data[i]);
    out << i << ',' << data.label(i);
    for (const double v : s.distances) {
      out << ',' << format_double(v);
    }
    out << ',' << format_double(s.delta) << ',';
    if (s.delta <= args.reject_threshold) {
      out << s.best_label;
    } else {
      out << "REJECT";
      ++rejected;
    }
    out << '\n';
  }
  const double elapsed = seconds_since(t0);
  log("scored " + std::to_string(data.size()) + " rows, " + std::to_string(rejected) +
      " rejected, " + format_double(elapsed / static_cast<double>(data.size()) * 1e3) +
      " ms/sample");
  write_text(args.out, out.str());
}

void run_eval_separation(const SeparationArgs& args) {
  const LabeledDataset train = load_csv(args.train);
  const LabeledDataset test = load_csv(args.test);
  log_class_sizes(train, "train");
  SeparationConfig cfg;
  cfg.m = args.m;
  cfg.ell = args.ell;
  cfg.policy = policy_from(args.common.policy);
  cfg.seeds = args.common.seeds;
  cfg.shared_directions = args.shared_y;
  cfg.tolerance = effective_tolerance();
  cfg.threads = args.common.threads;
  write_report(run_class_separation(train, test, cfg), args.common);
}

void run_eval_anomaly(const AnomalyArgs& args) {
  const LabeledDataset train = load_csv(args.train);
  const LabeledDataset test = load_csv(args.test);
  log_class_sizes(train, "train");
  AnomalyConfig cfg;
  cfg.p = args.p;
  cfg.m = args.m;
  cfg.ell = args.ell;
  cfg.policy = policy_from(args.common.policy);
  cfg.seeds = args.common.seeds;
  cfg.target_classes = args.classes;
  cfg.threads = args.common.threads;
  write_report(run_anomaly_detection(train, test, cfg), args.common);
}

void run_eval_ood(const OodArgs& args) {
  const LabeledDataset train = load_csv(args.train);
  const LabeledDataset test = load_csv(args.test);
  const LabeledDataset ood = load_csv(args.ood);
  if (ood.empty()) {
    throw InvalidArgument(args.ood + " has no rows");
  }
  log_class_sizes(train, "train");
  OodConfig cfg;
  cfg.ell = args.ell;
  cfg.m = args.m;
  cfg.policy = policy_from(args.common.policy);
  cfg.seeds = args.common.seeds;
  cfg.bins = args.bins;
  cfg.threads = args.common.threads;
  const EvalReport report = run_ood_detection(train, test, ood.points(), cfg);
  write_report(report, args.common);
  for (const auto& p : report.populations) {
    log("delta " + p.population + " seed " + std::to_string(p.seed) + " mean " +
        format_double(p.mean) + " within1 " + format_double(p.fraction_within));
  }
}

void run_eval_grid(const GridArgs& args) {
  std::vector<GridDataset> datasets;
  if (!args.train.empty() || !args.test.empty()) {
    if (args.train.size() != args.test.size()) {
      throw InvalidArgument("grid needs as many --test files as --train files");
    }
    for (std::size_t i = 0; i < args.train.size(); ++i) {
      datasets.push_back({load_csv(args.train[i]), load_csv(args.test[i])});
    }
  } else {
    if (args.d_min == 0 || args.d_min > args.d_max) {
      throw InvalidArgument("grid needs 1 <= --d-min <= --d-max");
    }
    for (std::size_t d = args.d_min; d <= args.d_max; ++d) {
      const LabeledDataset all =
          separated_clusters(args.synth_classes, d, args.synth_train + args.synth_test,
                             args.synth_spacing, derive_seed(args.data_seed, d));
      auto [train, test] = split_per_class(all, args.synth_train);
      datasets.push_back({std::move(train), std::move(test)});
    }
    log("generated " + std::to_string(datasets.size()) + " synthetic datasets");
  }
  GridConfig cfg;
  cfg.p = args.p;
  cfg.ell = args.ell;
  cfg.m_values = args.m_values;
  cfg.policy = policy_from(args.common.policy);
  cfg.seeds = args.common.seeds;
  cfg.target_classes = args.classes;
  cfg.threads = args.common.threads;
  EvalReport report = run_sensitivity_grid(datasets, cfg);
  if (args.train.empty()) {
    report.config["synthetic"] = {{"classes", args.synth_classes},
                                  {"train_per_class", args.synth_train},
                                  {"test_per_class", args.synth_test},
                                  {"spacing", args.synth_spacing},
                                  {"data_seed", args.data_seed}};
  }
  write_report(report, args.common);
}

void run_synth_gaussian(const GaussianArgs& args) {
  LabeledDataset data;
  if (args.anisotropy) {
    std::vector<double> variances(args.dim, *args.anisotropy);
    variances[0] = 1.0;
    std::vector<GaussianComponent> comps(args.classes);
    for (std::size_t k = 0; k < args.classes; ++k) {
      comps[k].label = static_cast<int>(k);
      comps[k].count = args.per_class;
      comps[k].mean.assign(args.dim, 0.0);
      comps[k].mean[0] = args.spacing * static_cast<double>(k);
      comps[k].covariance = Covariance::diagonal(variances);
    }
    data = gen_gaussian_mixture(comps, args.seed);
  } else {
    data = separated_clusters(args.classes, args.dim, args.per_class, args.spacing, args.seed);
  }
  save_csv(data, args.out);
  log("wrote " + std::to_string(data.size()) + " rows");
}

void run_synth_sphere(const SphereArgs& args) {
  if (args.label < 0) {
    throw InvalidArgument("--label must be nonnegative");
  }
  const Vector c = center_or_origin(args.center, args.dim);
  const PointCloud pts = gen_sphere_uniform(args.n, args.dim, c, args.radius, args.seed);
  const std::vector<double> coords(pts.coordinates().begin(), pts.coordinates().end());
  save_csv(LabeledDataset(args.dim, coords, std::vector<int>(args.n, args.label)), args.out);
  log("wrote " + std::to_string(args.n) + " rows");
}

void run_synth_preset(const PresetArgs& args) {
  if (args.name != "fig1") {
    throw InvalidArgument("unknown preset '" + args.name + "'; available: fig1");
  }
  save_csv(outlier_cloud_preset(args.seed), args.out);
  log("wrote preset fig1: 145 inliers (label 0), 5 outliers (label 1)");
}

void run_theory_vertex_count(const VertexCountArgs& args) {
  std::ostringstream out;
  out << "seed,m,vertices,ratio\n";
  if (args.cube) {
    const std::size_t d = args.dim;
    std::vector<double> dirs(2 * d * d, 0.0);
    for (std::size_t j = 0; j < d; ++j) {
      dirs[(2 * j) * d + j] = 1.0;
      dirs[(2 * j + 1) * d + j] = -1.0;
    }
    const HPolytope cube(DirectionSet(d, dirs), Vector(2 * d, 1.0));
    const std::size_t v = enumerate_vertices(cube).size();
    out << args.seed << ',' << 2 * d << ',' << v << ','
        << format_double(static_cast<double>(v) / static_cast<double>(2 * d)) << '\n';
    log("cube d=" + std::to_string(d) + ": " + std::to_string(v) + " vertices");
  } else {
    if (args.dim > VertexEnumerationOptions{}.max_dim) {
      throw InvalidArgument("vertex-count enumerates vertices only for d <= " +
                            std::to_string(VertexEnumerationOptions{}.max_dim));
    }
    for (std::size_t t = 0; t < args.trials; ++t) {
      const std::uint64_t trial_seed = derive_seed(args.seed, t);
      Rng rng(derive_seed(trial_seed, 0));
      std::vector<double> coords(args.n * args.dim);
      for (double& v : coords) {
        v = rng.gaussian();
      }
      const PointCloud x(args.dim, std::move(coords));
      for (const std::size_t m : args.m_values) {
        const DirectionSet y = sample_unit_directions(m, args.dim, derive_seed(trial_seed, m));
        const std::size_t v = enumerate_vertices(fit_rpd(x, y, args.ell)).size();
        out << trial_seed << ',' << m << ',' << v << ','
            << format_double(static_cast<double>(v) / static_cast<double>(m)) << '\n';
      }
      log("trial " + std::to_string(t) + " done");
    }
  }
  write_text(args.out, out.str());
}

void run_theory_barycenter(const BarycenterArgs& args) {
  if (args.trials == 0 || args.samples.empty()) {
    throw InvalidArgument("barycenter needs --trials >= 1 and at least one --samples value");
  }
  const Vector c = center_or_origin(args.center, args.dim);
  std::vector<std::vector<double>> dist(args.samples.size(), std::vector<double>(args.trials));
  for (std::size_t t = 0; t < args.trials; ++t) {
    const std::uint64_t trial_seed = derive_seed(args.seed, t);
    const PointCloud x = gen_sphere_uniform(args.n, args.dim, c, 1.0, derive_seed(trial_seed, 0));
    const DirectionSet y = sample_unit_directions(args.m, args.dim, derive_seed(trial_seed, 1));
    const HPolytope p = fit_rpd(x, y, 1);
    for (std::size_t k = 0; k < args.samples.size(); ++k) {
      const Vector est = vertex_barycenter_estimate(p, args.samples[k], derive_seed(trial_seed, 2));
      dist[k][t] = euclidean_distance(est, c);
    }
  }
  std::ostringstream out;
  out << "s,trial,distance,success,success_rate\n";
  for (std::size_t k = 0; k < args.samples.size(); ++k) {
    const auto hits = static_cast<std::size_t>(
        std::count_if(dist[k].begin(), dist[k].end(), [&](double v) { return v <= args.eps; }));
    const double rate = static_cast<double>(hits) / static_cast<double>(args.trials);
    for (std::size_t t = 0; t < args.trials; ++t) {
      out << args.samples[k] << ',' << t << ',' << format_double(dist[k][t]) << ','
          << (dist[k][t] <= args.eps ? 1 : 0) << ',' << format_double(rate) << '\n';
    }
    log("s=" + std::to_string(args.samples[k]) + " success rate " + format_double(rate) +
        " at eps " + format_double(args.eps));
  }
  write_text(args.out, out.str());
}

} // namespace rpd::cli
