#include "rpd/descriptor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rpd/errors.hpp"
#include "rpd/parallel.hpp"
#include "rpd/polytope_ops.hpp"
#include "rpd/random.hpp"

namespace rpd {

namespace {

constexpr std::uint64_t kSharedDirectionsStream = ~std::uint64_t{0};
constexpr std::uint64_t kBarycenterStream = 1;

} // namespace

ClassDescriptor fit_class(const PointCloud& points, int label, const DirectionSet& directions,
                          std::size_t ell, CenterPolicy policy, std::size_t barycenter_samples,
                          std::uint64_t seed, const LpOptions& lp) {
  if (points.size() < ell) {
    throw InvalidArgument("class " + std::to_string(label) + " has " +
                          std::to_string(points.size()) + " points but ell = " +
                          std::to_string(ell));
  }
  ClassDescriptor out;
  out.label = label;
  out.count = points.size();
  HPolytope bare = fit_rpd(points, directions, ell);

  auto chebyshev = [&](const HPolytope& p) {
    const ChebyshevBall ball = chebyshev_center(p, lp);
    if (ball.degenerate()) {
      throw NotInteriorError("class " + std::to_string(label) +
                             ": Chebyshev radius is zero, no strictly interior central point");
    }
    return p.with_center({ball.center, CenterPolicy::Chebyshev});
  };

  switch (policy) {
  case CenterPolicy::Chebyshev:
    out.polytope = chebyshev(bare);
    return out;
  case CenterPolicy::SampleMean:
    out.polytope = bare.with_center({points.mean(), CenterPolicy::SampleMean});
    break;
  case CenterPolicy::VertexBarycenter:
    out.polytope = bare.with_center(
        {vertex_barycenter_estimate(bare, barycenter_samples, derive_seed(seed, kBarycenterStream), lp),
         CenterPolicy::VertexBarycenter});
    break;
  case CenterPolicy::UserSupplied:
    throw InvalidArgument("fit_class cannot compute a user-supplied central point");
  }
  if (!out.polytope.has_interior_center()) {
    out.polytope = chebyshev(bare);
    out.fallback_applied = true;
  }
  return out;
}

RpdModel::RpdModel(std::size_t dim, std::size_t m, std::size_t ell, std::uint64_t seed,
                   bool shared_directions, CenterPolicy policy, std::vector<ClassDescriptor> classes)
    : dim_(dim), m_(m), ell_(ell), seed_(seed), shared_(shared_directions), policy_(policy),
      classes_(std::move(classes)) {
  if (dim_ == 0 || m_ == 0 || ell_ == 0) {
    throw InvalidArgument("model needs positive d, m and ell");
  }
  if (classes_.empty()) {
    throw InvalidArgument("model needs at least one class");
  }
  for (const auto& c : classes_) {
    if (c.polytope.dim() != dim_ || c.polytope.size() != m_) {
      throw InvalidArgument("class " + std::to_string(c.label) + " does not match d = " +
                            std::to_string(dim_) + ", m = " + std::to_string(m_));
    }
    if (!c.polytope.has_interior_center()) {
      throw NotInteriorError("class " + std::to_string(c.label) +
                             " has no strictly interior central point");
    }
  }
  for (std::size_t a = 0; a < classes_.size(); ++a) {
    for (std::size_t b = a + 1; b < classes_.size(); ++b) {
      if (classes_[a].label == classes_[b].label) {
        throw InvalidArgument("duplicate class label " + std::to_string(classes_[a].label));
      }
    }
  }
}

std::optional<std::size_t> RpdModel::index_of(int label) const noexcept {
  for (std::size_t k = 0; k < classes_.size(); ++k) {
    if (classes_[k].label == label) {
      return k;
    }
  }
  return std::nullopt;
}

RpdModel fit_model(const LabeledDataset& data, const FitOptions& options) {
  if (data.empty()) {
    throw InvalidArgument("fit_model needs a nonempty dataset");
  }
  if (options.m == 0 || options.ell == 0) {
    throw InvalidArgument("fit_model needs m >= 1 and ell >= 1");
  }
  const std::vector<int> labels = data.class_labels();
  for (const int label : labels) {
    const std::size_t n = data.count(label);
    if (n < options.ell) {
      throw InvalidArgument("class " + std::to_string(label) + " has " + std::to_string(n) +
                            " points but ell = " + std::to_string(options.ell));
    }
  }
  std::optional<DirectionSet> shared;
  if (options.shared_directions) {
    shared = sample_unit_directions(options.m, data.dim(),
                                    derive_seed(options.seed, kSharedDirectionsStream));
  }
  std::vector<ClassDescriptor> classes(labels.size());
  parallel_for(labels.size(), options.threads, [&](std::size_t k) {
    const std::uint64_t class_seed = derive_seed(options.seed, k);
    const DirectionSet dirs =
        shared ? *shared : sample_unit_directions(options.m, data.dim(), class_seed);
    classes[k] = fit_class(data.points_of(labels[k]), labels[k], dirs, options.ell,
                           options.policy, options.barycenter_samples, class_seed, options.lp);
  });
  return RpdModel(data.dim(), options.m, options.ell, options.seed, options.shared_directions,
                  options.policy, std::move(classes));
}

ScoreVector score(const RpdModel& model, std::span<const double> x) {
  if (x.size() != model.dim()) {
    throw InvalidArgument("score: point has dimension " + std::to_string(x.size()) +
                          ", model has " + std::to_string(model.dim()));
  }
  ScoreVector out;
  out.distances.reserve(model.class_count());
  for (const auto& c : model.classes()) {
    out.distances.push_back(scaling_distance(c.polytope, x));
  }
  const auto it = std::min_element(out.distances.begin(), out.distances.end());
  out.best = static_cast<std::size_t>(it - out.distances.begin());
  out.delta = *it;
  out.best_label = model.class_at(out.best).label;
  return out;
}

std::optional<int> classify(const RpdModel& model, std::span<const double> x,
                            double reject_threshold) {
  const ScoreVector s = score(model, x);
  if (s.delta <= reject_threshold) {
    return s.best_label;
  }
  return std::nullopt;
}

double confusion_coefficient(const RpdModel& model, const LabeledDataset& data, int k, int j,
                             double tol) {
  if (k == j) {
    throw InvalidArgument("confusion coefficient needs two distinct classes");
  }
  const auto ik = model.index_of(k);
  const auto ij = model.index_of(j);
  if (!ik || !ij) {
    throw InvalidArgument("confusion coefficient: class " + std::to_string(!ik ? k : j) +
                          " is not in the model");
  }
  if (data.dim() != model.dim()) {
    throw InvalidArgument("confusion coefficient: dimension mismatch");
  }
  const HPolytope& pk = model.class_at(*ik).polytope;
  const HPolytope& pj = model.class_at(*ij).polytope;
  std::size_t nk = 0;
  std::size_t nj = 0;
  std::size_t crossed = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data.label(i) == k) {
      ++nk;
      crossed += contains(pj, data[i], tol) ? 1 : 0;
    } else if (data.label(i) == j) {
      ++nj;
      crossed += contains(pk, data[i], tol) ? 1 : 0;
    }
  }
  if (nk == 0 || nj == 0) {
    throw InvalidArgument("confusion coefficient: class " + std::to_string(nk == 0 ? k : j) +
                          " has no points in the data");
  }
  return static_cast<double>(crossed) / static_cast<double>(nk + nj);
}

std::vector<std::vector<double>> confusion_matrix(const RpdModel& model,
                                                  const LabeledDataset& data, double tol) {
  const std::size_t K = model.class_count();
  std::vector<std::vector<double>> out(K, std::vector<double>(K, 0.0));
  for (std::size_t a = 0; a < K; ++a) {
    for (std::size_t b = a + 1; b < K; ++b) {
      const double g =
          confusion_coefficient(model, data, model.class_at(a).label, model.class_at(b).label, tol);
      out[a][b] = g;
      out[b][a] = g;
    }
  }
  return out;
}

} // namespace rpd
