#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rpd::cli {

/// Containment / LP feasibility tolerance: RPD_TOLERANCE if set, else the
/// library default.
double effective_tolerance();

struct FitArgs {
  std::string train;
  std::string out;
  std::size_t m = 640;
  std::size_t ell = 1;
  std::string policy = "sample-mean";
  std::uint64_t seed = 0;
  bool shared_y = false;
  std::size_t barycenter_samples = 500;
  unsigned threads = 0;
};

struct ScoreArgs {
  std::string model;
  std::string data;
  std::string out;
  double reject_threshold = 1.0;
};

struct EvalCommon {
  std::string out_json;
  std::string out_csv;
  std::string timings_out;
  std::string policy = "sample-mean";
  std::vector<std::uint64_t> seeds{0};
  unsigned threads = 0;
};

struct SeparationArgs {
  EvalCommon common;
  std::string train;
  std::string test;
  std::size_t m = 640;
  std::size_t ell = 1;
  bool shared_y = false;
};

struct AnomalyArgs {
  EvalCommon common;
  std::string train;
  std::string test;
  double p = 0.02;
  std::size_t m = 640;
  std::size_t ell = 2;
  std::vector<int> classes;
};

struct OodArgs {
  EvalCommon common;
  std::string train;
  std::string test;
  std::string ood;
  std::optional<std::size_t> m;
  std::size_t ell = 1;
  std::size_t bins = 50;
};

struct GridArgs {
  EvalCommon common;
  std::vector<std::string> train;
  std::vector<std::string> test;
  double p = 0.02;
  std::size_t ell = 2;
  std::vector<std::size_t> m_values{160, 320, 640, 1280};
  std::vector<int> classes;
  std::size_t d_min = 5;
  std::size_t d_max = 20;
  std::size_t synth_classes = 10;
  std::size_t synth_train = 600;
  std::size_t synth_test = 200;
  double synth_spacing = 8.0;
  std::uint64_t data_seed = 0;
};

struct GaussianArgs {
  std::string out;
  std::size_t classes = 2;
  std::size_t dim = 2;
  std::size_t per_class = 100;
  double spacing = 8.0;
  std::optional<double> anisotropy;
  std::uint64_t seed = 0;
};

struct SphereArgs {
  std::string out;
  std::size_t n = 1000;
  std::size_t dim = 3;
  double radius = 1.0;
  std::vector<double> center;
  int label = 0;
  std::uint64_t seed = 0;
};

struct PresetArgs {
  std::string out;
  std::string name;
  std::uint64_t seed = 0;
};

struct VertexCountArgs {
  std::string out;
  std::size_t dim = 3;
  std::size_t n = 500;
  std::size_t ell = 1;
  std::vector<std::size_t> m_values{50, 100, 200, 400};
  std::size_t trials = 10;
  std::uint64_t seed = 0;
  bool cube = false;
};

struct BarycenterArgs {
  std::string out;
  std::size_t dim = 3;
  std::size_t n = 2000;
  std::size_t m = 1000;
  std::vector<std::size_t> samples{500};
  std::size_t trials = 100;
  double eps = 0.1;
  std::vector<double> center;
  std::uint64_t seed = 0;
};

void run_fit(const FitArgs& args);
void run_score(const ScoreArgs& args);
void run_eval_separation(const SeparationArgs& args);
void run_eval_anomaly(const AnomalyArgs& args);
void run_eval_ood(const OodArgs& args);
void run_eval_grid(const GridArgs& args);
void run_synth_gaussian(const GaussianArgs& args);
void run_synth_sphere(const SphereArgs& args);
void run_synth_preset(const PresetArgs& args);
void run_theory_vertex_count(const VertexCountArgs& args);
void run_theory_barycenter(const BarycenterArgs& args);

} // namespace rpd::cli
