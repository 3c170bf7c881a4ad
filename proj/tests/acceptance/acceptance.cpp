// Acceptance suite: one line per criterion, "AC<n> PASS|FAIL <summary>".
// Exit status is nonzero if any criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "builders.hpp"
#include "oracles.hpp"
#include "rpd/baselines.hpp"
#include "rpd/descriptor.hpp"
#include "rpd/generators.hpp"
#include "rpd/geometry.hpp"
#include "rpd/harness.hpp"
#include "rpd/linalg.hpp"
#include "rpd/polytope_ops.hpp"
#include "rpd/random.hpp"

namespace fs = std::filesystem;
using namespace rpd;

namespace {

// Pinned tolerances and thresholds.
constexpr double kSdOracleTol = 1e-9;
constexpr double kOuterBoundTol = 1e-9;
constexpr double kTranslationFloatTol = 1e-12;
constexpr double kRotationTol = 1e-9;
constexpr double kAucOracleTol = 1e-12;
constexpr double kFig1Coverage = 0.90;
constexpr double kVertexBand = 2.5;
constexpr double kBarycenterEps = 0.1;
constexpr double kBarycenterRate = 0.90;
constexpr double kStrictShare = 0.70;
constexpr double kAnomalyFloor = 0.95;
constexpr double kInversionSlack = 0.005;
constexpr double kFitMeanSeconds = 1.0;
constexpr double kFitChebyshevSeconds = 3.0;
constexpr double kScoreSecondsPerSample = 1e-3;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int digits = 4) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

struct Outcome {
  bool pass = false;
  std::string summary;
};

int failures = 0;

void report(const char* id, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) {
    ++failures;
  }
  std::cout << id << ' ' << (o.pass ? "PASS" : "FAIL") << ' ' << o.summary << " ["
            << fmt(since(t0), 3) << " s]" << std::endl;
}

std::vector<double> as_vec(std::span<const double> s) { return {s.begin(), s.end()}; }

// Random orthogonal matrix by Gram-Schmidt on Gaussian columns, row-major.
std::vector<double> random_rotation(oracle::TestRng& rng, std::size_t d) {
  std::vector<std::vector<double>> q;
  while (q.size() < d) {
    std::vector<double> v(d);
    for (double& x : v) {
      x = rng.normal();
    }
    for (const auto& u : q) {
      const double p = dot(u, v);
      for (std::size_t j = 0; j < d; ++j) {
        v[j] -= p * u[j];
      }
    }
    const double n = euclidean_norm(v);
    if (n < 1e-6) {
      continue;
    }
    for (double& x : v) {
      x /= n;
    }
    q.push_back(v);
  }
  std::vector<double> r(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      r[i * d + j] = q[i][j];
    }
  }
  return r;
}

std::vector<double> apply_rows(const std::vector<double>& rot, std::span<const double> flat,
                               std::size_t d) {
  std::vector<double> out(flat.size(), 0.0);
  for (std::size_t r = 0; r < flat.size() / d; ++r) {
    for (std::size_t i = 0; i < d; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        s += rot[i * d + j] * flat[r * d + j];
      }
      out[r * d + i] = s;
    }
  }
  return out;
}

Outcome ac1() {
  oracle::TestRng rng(101);
  const auto t0 = Clock::now();
  double worst = 0.0;
  std::size_t bad = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t d = 1 + static_cast<std::size_t>(rng.uniform() * 5);
    const std::size_t m = 2 * d + static_cast<std::size_t>(rng.uniform() * (65 - 2 * d));
    const PointCloud x = testkit::gaussian_cloud(rng, 30, d);
    const DirectionSet y = testkit::random_directions(rng, m, d);
    if (!is_positively_spanning(y)) {
      --t;
      continue;
    }
    const HPolytope bare = fit_rpd(x, y, 1);
    // A random convex combination of the data is strictly interior with
    // probability one; reject the rare boundary case.
    std::vector<double> c(d, 0.0);
    double wsum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double w = rng.uniform();
      wsum += w;
      for (std::size_t j = 0; j < d; ++j) {
        c[j] += w * x[i][j];
      }
    }
    for (double& v : c) {
      v /= wsum;
    }
    const HPolytope p = bare.with_center({c, CenterPolicy::UserSupplied});
    if (!p.has_interior_center()) {
      --t;
      continue;
    }
    const oracle::Halfspaces h = testkit::to_halfspaces(p);
    for (int q = 0; q < 5; ++q) {
      std::vector<double> z(d);
      for (double& v : z) {
        v = 3.0 * rng.normal();
      }
      const double fast = scaling_distance(p, z);
      const double slow = oracle::scaling_distance_bisection(h, c, z);
      const double err = std::abs(fast - slow) / std::max(1.0, slow);
      worst = std::max(worst, err);
      bad += err > kSdOracleTol ? 1 : 0;
    }
  }
  const double secs = since(t0);
  return {bad == 0 && secs < 10.0, "1000 instances x 5 queries, max scaled error " + fmt(worst) +
                                       ", mismatches " + std::to_string(bad) + ", " +
                                       fmt(secs, 3) + " s (< 10 s)"};
}

Outcome ac2() {
  oracle::TestRng rng(202);
  std::size_t violations = 0;
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t d = 2 + t % 7;
    const std::size_t n = 50 + static_cast<std::size_t>(rng.uniform() * 200);
    const PointCloud x = testkit::gaussian_cloud(rng, n, d, 0.5 + 2.0 * rng.uniform());
    const DirectionSet y = sample_unit_directions(20 * d, d, static_cast<std::uint64_t>(t));
    const HPolytope p = fit_rpd(x, y, 1).with_center({x.mean(), CenterPolicy::SampleMean});
    if (!p.has_interior_center()) {
      return {false, "instance " + std::to_string(t) + " has a non-interior mean"};
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double s = scaling_distance(p, x[i]);
      worst = std::max(worst, s);
      violations += s > 1.0 + kOuterBoundTol ? 1 : 0;
    }
  }
  return {violations == 0,
          "100 instances, max training sd " + fmt(worst, 17) + ", violations " +
              std::to_string(violations)};
}

Outcome ac3() {
  oracle::TestRng rng(303);
  std::size_t nest_bad = 0;
  std::size_t super_bad = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t d = 2 + t % 5;
    const PointCloud x = testkit::gaussian_cloud(rng, 80, d);
    const DirectionSet y = sample_unit_directions(40, d, static_cast<std::uint64_t>(t));
    Vector prev = fit_rpd(x, y, 1).offsets();
    for (std::size_t ell = 2; ell <= 6; ++ell) {
      const Vector cur = fit_rpd(x, y, ell).offsets();
      for (std::size_t i = 0; i < cur.size(); ++i) {
        nest_bad += cur[i] > prev[i] ? 1 : 0;
      }
      prev = cur;
    }
  }
  for (int t = 0; t < 100; ++t) {
    const std::size_t d = 2 + t % 5;
    const PointCloud x = testkit::gaussian_cloud(rng, 80, d);
    const auto seed = static_cast<std::uint64_t>(1000 + t);
    const DirectionSet small = sample_unit_directions(30, d, seed);
    const DirectionSet big = sample_unit_directions(90, d, seed);
    const HPolytope ps = fit_rpd(x, small, 2);
    const HPolytope pb = fit_rpd(x, big, 2);
    for (std::size_t i = 0; i < 30; ++i) {
      const auto a = small[i];
      const auto b = big[i];
      super_bad += std::equal(a.begin(), a.end(), b.begin()) && ps.offsets()[i] == pb.offsets()[i]
                       ? 0
                       : 1;
    }
    for (int q = 0; q < 200; ++q) {
      const PointCloud z = testkit::gaussian_cloud(rng, 1, d, 1.5);
      super_bad += contains(pb, z[0], 0.0) && !contains(ps, z[0], 0.0) ? 1 : 0;
    }
  }
  return {nest_bad == 0 && super_bad == 0,
          "ell 1..6 nesting violations " + std::to_string(nest_bad) +
              " over 100 instances; superset violations " + std::to_string(super_bad) +
              " over 100 instances"};
}

Outcome ac4() {
  oracle::TestRng rng(404);
  std::size_t exact_bad = 0;
  double float_worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t d = 1 + t % 5;
    std::vector<double> c(30 * d);
    for (double& v : c) {
      v = std::floor(rng.uniform() * 41.0) - 20.0;
    }
    std::vector<double> shift(d);
    for (double& v : shift) {
      v = std::floor(rng.uniform() * 201.0) - 100.0;
    }
    std::vector<double> moved = c;
    for (std::size_t i = 0; i < moved.size(); ++i) {
      moved[i] += shift[i % d];
    }
    const DirectionSet y = testkit::axis_directions(d);
    const std::size_t ell = 1 + t % 3;
    const HPolytope a = fit_rpd(PointCloud(d, c), y, ell);
    const HPolytope b = fit_rpd(PointCloud(d, moved), y, ell);
    for (std::size_t i = 0; i < y.size(); ++i) {
      exact_bad += b.offsets()[i] == a.offsets()[i] + dot(y[i], shift) ? 0 : 1;
    }
    // Random data and directions: same order statistic, offsets to 1e-12.
    const PointCloud x = testkit::gaussian_cloud(rng, 40, d);
    const DirectionSet yr = sample_unit_directions(8 * d, d, static_cast<std::uint64_t>(t));
    std::vector<double> xs = as_vec(x.coordinates());
    const auto s = oracle::random_unit(rng, d);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      xs[i] += 2.0 * s[i % d];
    }
    const HPolytope pa = fit_rpd(x, yr, ell);
    const HPolytope pb = fit_rpd(PointCloud(d, xs), yr, ell);
    for (std::size_t i = 0; i < yr.size(); ++i) {
      float_worst = std::max(float_worst,
                             std::abs(pb.offsets()[i] - pa.offsets()[i] - 2.0 * dot(yr[i], s)));
    }
  }
  double rot_worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t d = 2 + t % 4;
    const PointCloud x = testkit::gaussian_cloud(rng, 50, d);
    const DirectionSet y = sample_unit_directions(10 * d, d, static_cast<std::uint64_t>(500 + t));
    const auto rot = random_rotation(rng, d);
    const PointCloud rx(d, apply_rows(rot, x.coordinates(), d));
    const DirectionSet ry(d, apply_rows(rot, y.data(), d));
    const HPolytope p = fit_rpd(x, y, 2).with_center({x.mean(), CenterPolicy::SampleMean});
    const HPolytope q = fit_rpd(rx, ry, 2).with_center({rx.mean(), CenterPolicy::SampleMean});
    for (std::size_t i = 0; i < y.size(); ++i) {
      rot_worst = std::max(rot_worst, std::abs(p.offsets()[i] - q.offsets()[i]));
    }
    for (int k = 0; k < 20; ++k) {
      const PointCloud z = testkit::gaussian_cloud(rng, 1, d, 2.0);
      const PointCloud rz(d, apply_rows(rot, z.coordinates(), d));
      const double a = scaling_distance(p, z[0]);
      const double b = scaling_distance(q, rz[0]);
      rot_worst = std::max(rot_worst, std::abs(a - b) / std::max(1.0, a));
    }
  }
  return {exact_bad == 0 && float_worst <= kTranslationFloatTol && rot_worst <= kRotationTol,
          "translation: exact mismatches " + std::to_string(exact_bad) +
              " (integer data), float max error " + fmt(float_worst) +
              "; rotation max error " + fmt(rot_worst) + " (100 instances each)"};
}

Outcome ac5() {
  const auto t0 = Clock::now();
  std::vector<double> coverage;
  std::size_t volume_bad = 0;
  double worst_ratio = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const LabeledDataset data = outlier_cloud_preset(seed);
    const PointCloud all = data.points();
    const DirectionSet y = sample_unit_directions(80, 3, derive_seed(seed, 1));
    const HPolytope p = fit_rpd(all, y, 3).with_center({all.mean(), CenterPolicy::SampleMean});
    const PointCloud inliers = data.points_of(0);
    std::size_t covered = 0;
    for (std::size_t i = 0; i < inliers.size(); ++i) {
      covered += scaling_distance(p, inliers[i]) <= 1.0 ? 1 : 0;
    }
    coverage.push_back(static_cast<double>(covered) / static_cast<double>(inliers.size()));

    std::vector<oracle::Vec> pts;
    for (std::size_t i = 0; i < all.size(); ++i) {
      pts.push_back(as_vec(all[i]));
    }
    const oracle::Halfspaces hull = oracle::convex_hull_3d_facets(pts);
    // Sample box: bounding box of D_Y(X) with ell = 1, which contains both
    // the descriptor and (up to the facets missed by Y) the hull; widen it
    // to the data box as well.
    auto [lo, hi] = bounding_box(fit_rpd(all, y, 1));
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        lo[j] = std::min(lo[j], all[i][j]);
        hi[j] = std::max(hi[j], all[i][j]);
      }
    }
    oracle::TestRng rng(derive_seed(seed, 77));
    std::size_t in_rpd = 0;
    std::size_t in_hull = 0;
    std::vector<double> z(3);
    for (int s = 0; s < 1000000; ++s) {
      for (std::size_t j = 0; j < 3; ++j) {
        z[j] = lo[j] + (hi[j] - lo[j]) * rng.uniform();
      }
      in_rpd += contains(p, z, 0.0) ? 1 : 0;
      in_hull += oracle::inside(hull, z, 0.0) ? 1 : 0;
    }
    volume_bad += in_rpd <= in_hull ? 0 : 1;
    worst_ratio = std::max(worst_ratio, static_cast<double>(in_rpd) / static_cast<double>(in_hull));
  }
  const double med = median(coverage);
  const double secs = since(t0);
  return {med >= kFig1Coverage && volume_bad == 0 && secs < 60.0,
          "20 seeds: median inlier coverage " + fmt(med) + " (>= 0.9), min " +
              fmt(*std::min_element(coverage.begin(), coverage.end())) +
              "; vol(RPD)/vol(hull) max " + fmt(worst_ratio) + ", seeds with RPD larger " +
              std::to_string(volume_bad) + "; " + fmt(secs, 3) + " s (< 60 s)"};
}

Outcome ac6() {
  const auto t0 = Clock::now();
  const std::vector<std::size_t> ms{50, 100, 200, 400};
  std::vector<std::vector<double>> ratios(ms.size());
  for (std::uint64_t t = 0; t < 10; ++t) {
    const std::uint64_t trial_seed = derive_seed(0, t);
    Rng rng(derive_seed(trial_seed, 0));
    std::vector<double> c(500 * 3);
    for (double& v : c) {
      v = rng.gaussian();
    }
    const PointCloud x(3, std::move(c));
    for (std::size_t k = 0; k < ms.size(); ++k) {
      const DirectionSet y = sample_unit_directions(ms[k], 3, derive_seed(trial_seed, ms[k]));
      const std::size_t v = enumerate_vertices(fit_rpd(x, y, 1)).size();
      ratios[k].push_back(static_cast<double>(v) / static_cast<double>(ms[k]));
    }
  }
  std::vector<double> med;
  std::string detail;
  for (std::size_t k = 0; k < ms.size(); ++k) {
    med.push_back(median(ratios[k]));
    detail += (k ? ", " : "") + std::to_string(ms[k]) + ":" + fmt(med.back());
  }
  const double band = *std::max_element(med.begin(), med.end()) /
                      *std::min_element(med.begin(), med.end());
  const double secs = since(t0);
  return {band <= kVertexBand && secs < 300.0,
          "median vertices/m {" + detail + "}, max/min " + fmt(band) + " (<= 2.5); " +
              fmt(secs, 3) + " s"};
}

Outcome ac7() {
  const auto t0 = Clock::now();
  std::string detail;
  bool ok = true;
  for (const std::vector<double>& center : {std::vector<double>{0, 0, 0}, std::vector<double>{3, 0, 0}}) {
    std::size_t hits = 0;
    for (std::uint64_t t = 0; t < 100; ++t) {
      const std::uint64_t trial_seed = derive_seed(center[0] == 0.0 ? 7 : 8, t);
      const PointCloud x = gen_sphere_uniform(2000, 3, center, 1.0, derive_seed(trial_seed, 0));
      const DirectionSet y = sample_unit_directions(1000, 3, derive_seed(trial_seed, 1));
      const HPolytope p = fit_rpd(x, y, 1);
      const Vector est = vertex_barycenter_estimate(p, 500, derive_seed(trial_seed, 2));
      hits += euclidean_distance(est, center) <= kBarycenterEps ? 1 : 0;
    }
    const double rate = static_cast<double>(hits) / 100.0;
    ok = ok && rate >= kBarycenterRate;
    detail += (detail.empty() ? "" : ", ") + std::string("center (") + fmt(center[0]) +
              ",0,0): " + fmt(rate);
  }
  const double secs = since(t0);
  return {ok && secs < 300.0, "success rate within 0.1 over 100 trials " + detail +
                                  " (>= 0.9); " + fmt(secs, 3) + " s"};
}

Outcome ac8() {
  oracle::TestRng rng(808);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 200);
    const double levels = 2.0 + std::floor(rng.uniform() * 30.0);
    std::vector<double> s(n);
    std::vector<bool> pos(n);
    std::vector<rpd::Outcome> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = std::floor(rng.uniform() * levels);
      pos[i] = rng.uniform() < 0.3;
    }
    pos[0] = true;
    pos[n - 1] = false;
    for (std::size_t i = 0; i < n; ++i) {
      labels[i] = pos[i] ? rpd::Outcome::Positive : rpd::Outcome::Negative;
    }
    worst = std::max(worst, std::abs(auroc(s, labels) - oracle::auc_pairwise(s, pos)));
  }
  const std::vector<double> hs{0.1, 0.4, 0.35, 0.8};
  const std::vector<bool> hp{false, false, true, true};
  const std::vector<rpd::Outcome> hl{rpd::Outcome::Negative, rpd::Outcome::Negative,
                                     rpd::Outcome::Positive, rpd::Outcome::Positive};
  const double fast = auroc(hs, hl);
  const double slow = oracle::auc_pairwise(hs, hp);
  return {worst <= kAucOracleTol && fast == slow,
          "1000 tied instances, max |fast - pairwise| " + fmt(worst) +
              "; hand case (0.1,0.4,0.35,0.8 / -,-,+,+): fast " + fmt(fast) + ", pairwise " +
              fmt(slow)};
}

Outcome ac9() {
  const auto t0 = Clock::now();
  const LabeledDataset train = anisotropic_pair(8, 2000, 25.0, 4.0, 90);
  const LabeledDataset test = anisotropic_pair(8, 2000, 25.0, 4.0, 91);
  SeparationConfig cfg;
  cfg.m = 320;
  cfg.ell = 1;
  cfg.seeds.clear();
  for (std::uint64_t s = 0; s < 20; ++s) {
    cfg.seeds.push_back(s);
  }
  const EvalReport r = run_class_separation(train, test, cfg);
  std::size_t strict = 0;
  std::size_t pairs = 0;
  bool medians_ok = true;
  std::string detail;
  for (const int label : train.class_labels()) {
    const AucRow* rp = nullptr;
    const AucRow* cp = nullptr;
    for (const auto& row : r.aucs) {
      if (row.label == label) {
        (row.method == "rpd" ? rp : cp) = &row;
      }
    }
    const double med_rpd = median(rp->per_seed);
    const double med_cen = median(cp->per_seed);
    medians_ok = medians_ok && med_rpd >= med_cen;
    for (std::size_t s = 0; s < rp->per_seed.size(); ++s) {
      strict += rp->per_seed[s] > cp->per_seed[s] ? 1 : 0;
      ++pairs;
    }
    detail += " class " + std::to_string(label) + " median rpd " + fmt(med_rpd, 6) +
              " vs centroid " + fmt(med_cen, 6) + ";";
  }
  const double share = static_cast<double>(strict) / static_cast<double>(pairs);
  const double secs = since(t0);
  return {medians_ok && share >= kStrictShare && secs < 300.0,
          detail.substr(1) + " strictly greater in " + fmt(share) + " of pairs (>= 0.7); " +
              fmt(secs, 3) + " s"};
}

Outcome ac10() {
  const LabeledDataset all = separated_clusters(10, 16, 7000, 10.0, 1010);
  LabeledDataset train(16, {}, {});
  LabeledDataset test(16, {}, {});
  for (const int label : all.class_labels()) {
    const auto rows = all.indices_of(label);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      (r < 6000 ? train : test).append(all[rows[r]], label);
    }
  }
  const std::vector<std::size_t> ms{160, 320, 640};
  std::vector<double> med;
  double min_at_640 = 1.0;
  std::string detail;
  for (const std::size_t m : ms) {
    AnomalyConfig cfg;
    cfg.p = 0.02;
    cfg.ell = 2;
    cfg.m = m;
    cfg.seeds = {0, 1, 2, 3, 4};
    const EvalReport r = run_anomaly_detection(train, test, cfg);
    std::vector<double> aucs;
    for (const auto& row : r.aucs) {
      if (row.method == "rpd") {
        aucs.insert(aucs.end(), row.per_seed.begin(), row.per_seed.end());
      }
    }
    med.push_back(median(aucs));
    if (m == 640) {
      min_at_640 = *std::min_element(aucs.begin(), aucs.end());
    }
    detail += (detail.empty() ? "" : ", ") + std::to_string(m) + ":" + fmt(med.back(), 6);
  }
  std::size_t inversions = 0;
  bool small = true;
  for (std::size_t k = 1; k < med.size(); ++k) {
    if (med[k] < med[k - 1]) {
      ++inversions;
      small = small && med[k - 1] - med[k] <= kInversionSlack;
    }
  }
  const bool trend = inversions == 0 || (inversions == 1 && small);
  return {min_at_640 >= kAnomalyFloor && trend,
          "min AUC at m=640 " + fmt(min_at_640, 6) + " (>= 0.95); median AUC by m {" + detail +
              "}, inversions " + std::to_string(inversions)};
}

Outcome ac11() {
  oracle::TestRng rng(1111);
  const PointCloud x = testkit::gaussian_cloud(rng, 6000, 20);
  auto t0 = Clock::now();
  const ClassDescriptor mean_fit = fit_class(x, 0, sample_unit_directions(640, 20, 1), 2,
                                             CenterPolicy::SampleMean, 0, 1);
  const double mean_secs = since(t0);
  t0 = Clock::now();
  const ClassDescriptor cheb_fit = fit_class(x, 0, sample_unit_directions(640, 20, 1), 2,
                                             CenterPolicy::Chebyshev, 0, 1);
  const double cheb_secs = since(t0);

  // Scoring: delta over a 10-class model, 10,000 queries.
  const LabeledDataset data = separated_clusters(10, 20, 600, 10.0, 1112);
  FitOptions o;
  o.m = 640;
  o.ell = 2;
  o.threads = 1;
  const RpdModel model = fit_model(data, o);
  const PointCloud queries = testkit::gaussian_cloud(rng, 10000, 20, 5.0);
  double sink = 0.0;
  t0 = Clock::now();
  for (std::size_t i = 0; i < queries.size(); ++i) {
    sink += score(model, queries[i]).delta;
  }
  const double per_sample = since(t0) / 10000.0;
  const bool ok = mean_secs < kFitMeanSeconds && cheb_secs < kFitChebyshevSeconds &&
                  per_sample < kScoreSecondsPerSample && std::isfinite(sink) &&
                  mean_fit.polytope.has_interior_center() && cheb_fit.polytope.has_interior_center();
  return {ok, "fit 6000x20 m=640 ell=2: sample mean " + fmt(mean_secs, 3) + " s (< 1), Chebyshev " +
                  fmt(cheb_secs, 3) + " s (< 3); score 10 classes " + fmt(per_sample * 1e3, 3) +
                  " ms/sample (< 1)"};
}

Outcome ac12() {
  FitOptions o;
  o.m = 60;
  o.ell = 1;
  oracle::TestRng rng(1212);
  // Exact copies.
  LabeledDataset copy(3, {}, {});
  for (int i = 0; i < 100; ++i) {
    const PointCloud z = testkit::gaussian_cloud(rng, 1, 3);
    copy.append(z[0], 0);
    copy.append(z[0], 1);
  }
  const double g_copy = confusion_coefficient(fit_model(copy, o), copy, 0, 1);
  // Far apart.
  const LabeledDataset far = separated_clusters(2, 3, 100, 1000.0, 1213);
  const double g_far = confusion_coefficient(fit_model(far, o), far, 0, 1);
  // Brute-force recount on overlapping pairs.
  std::size_t mismatches = 0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t d = 2 + t % 4;
    const LabeledDataset data =
        separated_clusters(2, d, 40 + 3 * t, 0.5 + 0.05 * t, static_cast<std::uint64_t>(t));
    o.seed = static_cast<std::uint64_t>(t);
    const RpdModel model = fit_model(data, o);
    std::size_t crossed = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
      const std::size_t other = data.label(i) == 0 ? 1 : 0;
      const HPolytope& p = model.class_at(other).polytope;
      bool in = true;
      for (std::size_t r = 0; r < p.size(); ++r) {
        double s = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
          s += p.directions()[r][j] * data[i][j];
        }
        in = in && s <= p.offsets()[r] + kDefaultTolerance;
      }
      crossed += in ? 1 : 0;
    }
    const double expect = static_cast<double>(crossed) / static_cast<double>(data.size());
    mismatches += confusion_coefficient(model, data, 0, 1) == expect ? 0 : 1;
  }
  return {g_copy == 1.0 && g_far == 0.0 && mismatches == 0,
          "copies " + fmt(g_copy) + " (1), far " + fmt(g_far) + " (0), recount mismatches " +
              std::to_string(mismatches) + " of 50"};
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(RPD_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome ac13() {
  const fs::path root = fs::temp_directory_path() / "rpd_acceptance_cli";
  fs::remove_all(root);
  fs::create_directories(root / "a");
  fs::create_directories(root / "b");
  const auto in = [&](const char* name) { return (root / name).string(); };
  if (run_cli("synth gaussian --out " + in("train.csv") + " --classes 3 --d 4 --n 300 --seed 1") ||
      run_cli("synth gaussian --out " + in("test.csv") + " --classes 3 --d 4 --n 100 --seed 2") ||
      run_cli("synth sphere --out " + in("ood.csv") + " --n 100 --d 4 --center 9,9,9,9 --seed 3")) {
    return {false, "could not generate inputs"};
  }
  const std::string io = " --train " + in("train.csv") + " --test " + in("test.csv");
  struct Cmd {
    std::string args;
    std::vector<std::string> outputs;
  };
  const std::vector<Cmd> cmds{
      {"fit --train " + in("train.csv") + " --m 80 --ell 2 --seed 5 --out @model.json",
       {"model.json"}},
      {"fit --train " + in("train.csv") +
           " --m 40 --policy vertex-barycenter --barycenter-samples 20 --out @vb.json",
       {"vb.json"}},
      {"fit --train " + in("train.csv") + " --m 40 --policy chebyshev --shared-y --out @ch.json",
       {"ch.json"}},
      {"score --model @model.json --data " + in("test.csv") + " --out @scores.csv",
       {"scores.csv"}},
      {"eval separation" + io + " --m 60 --seeds 0,1 --out-json @sep.json --out-csv @sep.csv",
       {"sep.json", "sep.csv"}},
      {"eval anomaly" + io + " --m 60 --seeds 0,1 --out-json @an.json --out-csv @an.csv",
       {"an.json", "an.csv"}},
      {"eval ood" + io + " --ood " + in("ood.csv") +
           " --m 60 --out-json @ood.json --out-csv @ood.csv",
       {"ood.json", "ood.csv"}},
      {"eval grid --d-min 2 --d-max 3 --synth-classes 3 --synth-train 150 --synth-test 50 "
       "--m-values 20,40 --out-json @grid.json --out-csv @grid.csv",
       {"grid.json", "grid.csv"}},
      {"synth gaussian --classes 2 --d 3 --n 50 --anisotropy 4 --seed 9 --out @g.csv", {"g.csv"}},
      {"synth sphere --n 50 --d 3 --seed 9 --out @s.csv", {"s.csv"}},
      {"synth --preset fig1 --seed 4 --out @fig1.csv", {"fig1.csv"}},
      {"theory vertex-count --d 3 --n 200 --m-values 20,40 --trials 2 --out @vc.csv", {"vc.csv"}},
      {"theory barycenter --n 300 --m 100 --samples 5,10 --trials 3 --out @bc.csv", {"bc.csv"}},
  };
  std::size_t compared = 0;
  std::string problems;
  for (const auto& c : cmds) {
    for (const char* side : {"a", "b"}) {
      std::string args = c.args;
      for (std::size_t pos = args.find('@'); pos != std::string::npos; pos = args.find('@')) {
        args.replace(pos, 1, (root / side).string() + "/");
      }
      if (run_cli(args) != 0) {
        problems += " [exit!=0: " + c.args.substr(0, c.args.find(' ', 6)) + "]";
      }
    }
    for (const auto& out : c.outputs) {
      const std::string a = slurp(root / "a" / out);
      const std::string b = slurp(root / "b" / out);
      if (a.empty() || a != b) {
        problems += " [differs: " + out + "]";
      }
      ++compared;
    }
  }
  fs::remove_all(root);
  return {problems.empty(), std::to_string(cmds.size()) + " invocations, " +
                                std::to_string(compared) + " output files compared byte for byte" +
                                (problems.empty() ? "" : ";" + problems)};
}

} // namespace

int main() {
  std::cout << "acceptance suite" << std::endl;
  report("AC1", ac1);
  report("AC2", ac2);
  report("AC3", ac3);
  report("AC4", ac4);
  report("AC5", ac5);
  report("AC6", ac6);
  report("AC7", ac7);
  report("AC8", ac8);
  report("AC9", ac9);
  report("AC10", ac10);
  report("AC11", ac11);
  report("AC12", ac12);
  report("AC13", ac13);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
