#include "rpd/generators.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>

#include "rpd/errors.hpp"
#include "rpd/random.hpp"

namespace rpd {

namespace {

// Lower-triangular factor L with L L^T = covariance, row-major d x d.
std::vector<double> cholesky_factor(const Covariance& cov, std::size_t d, int label) {
  std::vector<double> L(d * d, 0.0);
  switch (cov.kind()) {
  case Covariance::Kind::Identity:
    for (std::size_t i = 0; i < d; ++i) {
      L[i * d + i] = 1.0;
    }
    return L;
  case Covariance::Kind::Diagonal:
    if (cov.values().size() != d) {
      throw InvalidArgument("component " + std::to_string(label) + ": diagonal covariance has " +
                            std::to_string(cov.values().size()) + " entries, expected " +
                            std::to_string(d));
    }
    for (std::size_t i = 0; i < d; ++i) {
      const double v = cov.values()[i];
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw InvalidArgument("component " + std::to_string(label) +
                              ": diagonal covariance is not positive definite");
      }
      L[i * d + i] = std::sqrt(v);
    }
    return L;
  case Covariance::Kind::Full: {
    if (cov.values().size() != d * d) {
      throw InvalidArgument("component " + std::to_string(label) + ": full covariance has " +
                            std::to_string(cov.values().size()) + " entries, expected " +
                            std::to_string(d * d));
    }
    const auto di = static_cast<Eigen::Index>(d);
    Eigen::MatrixXd S(di, di);
    for (Eigen::Index i = 0; i < di; ++i) {
      for (Eigen::Index j = 0; j < di; ++j) {
        S(i, j) = cov.values()[static_cast<std::size_t>(i * di + j)];
      }
    }
    if (!S.isApprox(S.transpose(), 1e-12)) {
      throw InvalidArgument("component " + std::to_string(label) + ": covariance is not symmetric");
    }
    const Eigen::LLT<Eigen::MatrixXd> llt(S);
    if (llt.info() != Eigen::Success) {
      throw InvalidArgument("component " + std::to_string(label) +
                            ": covariance is not positive definite");
    }
    const Eigen::MatrixXd F = llt.matrixL();
    for (Eigen::Index i = 0; i < di; ++i) {
      for (Eigen::Index j = 0; j <= i; ++j) {
        L[static_cast<std::size_t>(i * di + j)] = F(i, j);
      }
    }
    return L;
  }
  }
  return L;
}

} // namespace

LabeledDataset gen_gaussian_mixture(std::span<const GaussianComponent> components,
                                    std::uint64_t seed) {
  if (components.empty()) {
    throw InvalidArgument("gaussian mixture needs at least one component");
  }
  const std::size_t d = components.front().mean.size();
  if (d == 0) {
    throw InvalidArgument("gaussian mixture needs d >= 1");
  }
  std::vector<double> features;
  std::vector<int> labels;
  std::vector<double> z(d);
  for (std::size_t k = 0; k < components.size(); ++k) {
    const GaussianComponent& c = components[k];
    if (c.mean.size() != d) {
      throw InvalidArgument("component " + std::to_string(c.label) + " has mean of dimension " +
                            std::to_string(c.mean.size()) + ", expected " + std::to_string(d));
    }
    if (c.label < 0) {
      throw InvalidArgument("component labels must be nonnegative");
    }
    const std::vector<double> L = cholesky_factor(c.covariance, d, c.label);
    Rng rng(derive_seed(seed, k));
    for (std::size_t s = 0; s < c.count; ++s) {
      for (double& v : z) {
        v = rng.gaussian();
      }
      for (std::size_t i = 0; i < d; ++i) {
        double v = c.mean[i];
        for (std::size_t j = 0; j <= i; ++j) {
          v += L[i * d + j] * z[j];
        }
        features.push_back(v);
      }
      labels.push_back(c.label);
    }
  }
  return LabeledDataset(d, std::move(features), std::move(labels));
}

PointCloud gen_sphere_uniform(std::size_t n, std::size_t dim, std::span<const double> center,
                              double radius, std::uint64_t seed) {
  if (n == 0 || dim == 0) {
    throw InvalidArgument("gen_sphere_uniform needs n >= 1 and d >= 1");
  }
  if (!(radius > 0.0)) {
    throw InvalidArgument("gen_sphere_uniform needs a positive radius");
  }
  if (center.size() != dim) {
    throw InvalidArgument("gen_sphere_uniform: center has dimension " +
                          std::to_string(center.size()) + ", expected " + std::to_string(dim));
  }
  Rng rng(seed);
  std::vector<double> coords(n * dim);
  for (std::size_t i = 0; i < n; ++i) {
    std::span<double> p(coords.data() + i * dim, dim);
    rng.unit_vector(p);
    for (std::size_t j = 0; j < dim; ++j) {
      p[j] = center[j] + radius * p[j];
    }
  }
  return PointCloud(dim, std::move(coords));
}

std::size_t contamination_count(std::size_t n, double p) {
  return static_cast<std::size_t>(std::floor(p * static_cast<double>(n) + 1e-9));
}

ContaminatedSet contaminate(const LabeledDataset& data, int target, double p, std::uint64_t seed) {
  if (!(p > 0.0 && p < 1.0)) {
    throw InvalidArgument("contamination level p must lie in (0, 1)");
  }
  const std::vector<std::size_t> own = data.indices_of(target);
  if (own.empty()) {
    throw InvalidArgument("class " + std::to_string(target) + " has no points");
  }
  std::vector<std::size_t> donors;
  donors.reserve(data.size() - own.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data.label(i) != target) {
      donors.push_back(i);
    }
  }
  const std::size_t extra = contamination_count(own.size(), p);
  if (extra > donors.size()) {
    throw InvalidArgument("contamination needs " + std::to_string(extra) +
                          " points from other classes, only " + std::to_string(donors.size()) +
                          " available");
  }
  // Partial Fisher-Yates: the first `extra` slots become the sample.
  Rng rng(seed);
  for (std::size_t i = 0; i < extra; ++i) {
    const std::size_t j = i + rng.uniform_index(donors.size() - i);
    std::swap(donors[i], donors[j]);
  }
  donors.resize(extra);

  ContaminatedSet out;
  out.inlier_count = own.size();
  out.anomaly_rows = donors;
  std::vector<double> coords;
  coords.reserve((own.size() + extra) * data.dim());
  for (const std::size_t i : own) {
    coords.insert(coords.end(), data[i].begin(), data[i].end());
  }
  for (const std::size_t i : donors) {
    coords.insert(coords.end(), data[i].begin(), data[i].end());
  }
  out.points = PointCloud(data.dim(), std::move(coords));
  return out;
}

LabeledDataset separated_clusters(std::size_t classes, std::size_t dim, std::size_t per_class,
                                  double spacing, std::uint64_t seed) {
  if (classes == 0 || dim == 0) {
    throw InvalidArgument("separated_clusters needs K >= 1 and d >= 1");
  }
  std::vector<GaussianComponent> comps(classes);
  Rng rng(derive_seed(seed, 0x6d65616e73ULL));
  for (std::size_t k = 0; k < classes; ++k) {
    comps[k].label = static_cast<int>(k);
    comps[k].count = per_class;
    comps[k].mean.assign(dim, 0.0);
    if (classes <= dim) {
      comps[k].mean[k] = spacing;
    } else {
      rng.unit_vector(comps[k].mean);
      for (double& v : comps[k].mean) {
        v *= spacing;
      }
    }
  }
  return gen_gaussian_mixture(comps, seed);
}

LabeledDataset anisotropic_pair(std::size_t dim, std::size_t per_class, double condition_number,
                                double separation, std::uint64_t seed) {
  if (dim == 0 || !(condition_number >= 1.0)) {
    throw InvalidArgument("anisotropic_pair needs d >= 1 and condition number >= 1");
  }
  std::vector<double> variances(dim, condition_number);
  variances[0] = 1.0;
  std::vector<GaussianComponent> comps(2);
  for (int k = 0; k < 2; ++k) {
    comps[static_cast<std::size_t>(k)].label = k;
    comps[static_cast<std::size_t>(k)].count = per_class;
    comps[static_cast<std::size_t>(k)].mean.assign(dim, 0.0);
    comps[static_cast<std::size_t>(k)].covariance = Covariance::diagonal(variances);
  }
  comps[1].mean[0] = separation;
  return gen_gaussian_mixture(comps, seed);
}

LabeledDataset outlier_cloud_preset(std::uint64_t seed) {
  std::vector<GaussianComponent> comps(2);
  comps[0] = {0, 145, Vector(3, 0.0), Covariance::identity()};
  comps[1] = {1, 5, Vector(3, 0.0), Covariance::diagonal({9.0, 9.0, 9.0})};
  return gen_gaussian_mixture(comps, seed);
}

} // namespace rpd
