#include <benchmark/benchmark.h>

#include <vector>

#include "rpd/baselines.hpp"
#include "rpd/descriptor.hpp"
#include "rpd/generators.hpp"
#include "rpd/polytope_ops.hpp"
#include "rpd/random.hpp"

namespace {

rpd::PointCloud gaussian_points(std::size_t n, std::size_t d, std::uint64_t seed) {
  rpd::Rng rng(seed);
  std::vector<double> c(n * d);
  for (double& v : c) {
    v = rng.gaussian();
  }
  return rpd::PointCloud(d, std::move(c));
}

void BM_FitClass(benchmark::State& state, rpd::CenterPolicy policy) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto m = static_cast<std::size_t>(state.range(1));
  const std::size_t d = 20;
  const rpd::PointCloud x = gaussian_points(n, d, 1);
  const rpd::DirectionSet y = rpd::sample_unit_directions(m, d, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rpd::fit_class(x, 0, y, 2, policy, 0, 3));
  }
}
BENCHMARK_CAPTURE(BM_FitClass, sample_mean, rpd::CenterPolicy::SampleMean)
    ->Args({6000, 640})
    ->Args({6000, 1280})
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_FitClass, chebyshev, rpd::CenterPolicy::Chebyshev)
    ->Args({6000, 640})
    ->Unit(benchmark::kMillisecond);

void BM_Score(benchmark::State& state) {
  const auto classes = static_cast<std::size_t>(state.range(0));
  const rpd::LabeledDataset data = rpd::separated_clusters(classes, 20, 600, 10.0, 4);
  rpd::FitOptions o;
  o.m = 640;
  o.ell = 2;
  const rpd::RpdModel model = rpd::fit_model(data, o);
  const rpd::PointCloud q = gaussian_points(1024, 20, 5);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rpd::score(model, q[i++ % q.size()]));
  }
}
BENCHMARK(BM_Score)->Arg(1)->Arg(10);

void BM_RandomVertex(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const rpd::PointCloud x = gaussian_points(2000, d, 6);
  const rpd::HPolytope p = rpd::fit_rpd(x, rpd::sample_unit_directions(40 * d, d, 7), 1);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rpd::random_vertex(p, seed++));
  }
}
BENCHMARK(BM_RandomVertex)->Arg(3)->Arg(16);

void BM_Auroc(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  rpd::Rng rng(8);
  std::vector<double> scores(n);
  std::vector<rpd::Outcome> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    scores[i] = rng.gaussian();
    labels[i] = rng.uniform01() < 0.1 ? rpd::Outcome::Positive : rpd::Outcome::Negative;
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(rpd::auroc(scores, labels));
  }
}
BENCHMARK(BM_Auroc)->Arg(10000)->Arg(100000);

} // namespace

BENCHMARK_MAIN();
