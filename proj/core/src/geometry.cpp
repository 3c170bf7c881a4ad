#include "rpd/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "rpd/errors.hpp"
#include "rpd/lp.hpp"
#include "rpd/random.hpp"

namespace rpd {

PointCloud::PointCloud(std::size_t dim, std::vector<double> coordinates)
    : dim_(dim), coords_(std::move(coordinates)) {
  if (dim_ == 0) {
    throw InvalidArgument("point cloud dimension must be positive");
  }
  if (coords_.empty() || coords_.size() % dim_ != 0) {
    throw InvalidArgument("point cloud needs n >= 1 points of dimension " + std::to_string(dim_) +
                          ", got " + std::to_string(coords_.size()) + " coordinates");
  }
}

PointCloud PointCloud::from_rows(const std::vector<Vector>& rows) {
  if (rows.empty()) {
    throw InvalidArgument("point cloud needs at least one point");
  }
  const std::size_t d = rows.front().size();
  std::vector<double> coords;
  coords.reserve(rows.size() * d);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != d) {
      throw InvalidArgument("point " + std::to_string(i) + " has " +
                            std::to_string(rows[i].size()) + " coordinates, expected " +
                            std::to_string(d));
    }
    coords.insert(coords.end(), rows[i].begin(), rows[i].end());
  }
  return PointCloud(d, std::move(coords));
}

Vector PointCloud::mean() const {
  Vector m(dim_, 0.0);
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto p = (*this)[i];
    for (std::size_t j = 0; j < dim_; ++j) {
      m[j] += p[j];
    }
  }
  for (double& v : m) {
    v /= static_cast<double>(n);
  }
  return m;
}

DirectionSet::DirectionSet(std::size_t dim, std::vector<double> directions,
                           std::optional<std::uint64_t> seed)
    : dim_(dim), data_(std::move(directions)), seed_(seed) {
  if (dim_ == 0) {
    throw InvalidArgument("direction set dimension must be positive");
  }
  if (data_.empty() || data_.size() % dim_ != 0) {
    throw InvalidArgument("direction set needs m >= 1 directions of dimension " +
                          std::to_string(dim_));
  }
  for (std::size_t i = 0; i < size(); ++i) {
    const double norm = euclidean_norm((*this)[i]);
    if (!(std::abs(norm - 1.0) <= 1e-12)) {
      throw InvalidArgument("direction " + std::to_string(i) + " has norm " +
                            std::to_string(norm) + ", expected 1");
    }
  }
}

DirectionSet DirectionSet::subset(std::span<const std::size_t> indices) const {
  std::vector<double> out;
  out.reserve(indices.size() * dim_);
  for (const std::size_t i : indices) {
    if (i >= size()) {
      throw InvalidArgument("direction index " + std::to_string(i) + " out of range");
    }
    const auto y = (*this)[i];
    out.insert(out.end(), y.begin(), y.end());
  }
  return DirectionSet(dim_, std::move(out), seed_);
}

std::string_view to_string(CenterPolicy policy) noexcept {
  switch (policy) {
  case CenterPolicy::SampleMean:
    return "sample-mean";
  case CenterPolicy::Chebyshev:
    return "chebyshev";
  case CenterPolicy::VertexBarycenter:
    return "vertex-barycenter";
  case CenterPolicy::UserSupplied:
    return "user-supplied";
  }
  return "user-supplied";
}

CenterPolicy parse_center_policy(std::string_view name) {
  for (const auto p : {CenterPolicy::SampleMean, CenterPolicy::Chebyshev,
                       CenterPolicy::VertexBarycenter, CenterPolicy::UserSupplied}) {
    if (name == to_string(p)) {
      return p;
    }
  }
  throw InvalidArgument("unknown central point policy '" + std::string(name) + "'");
}

HPolytope::HPolytope(DirectionSet directions, Vector offsets)
    : directions_(std::move(directions)), offsets_(std::move(offsets)) {
  if (offsets_.size() != directions_.size()) {
    throw InvalidArgument("polytope has " + std::to_string(directions_.size()) +
                          " directions but " + std::to_string(offsets_.size()) + " offsets");
  }
}

HPolytope HPolytope::with_center(CentralPoint center) const {
  if (center.point.size() != dim()) {
    throw InvalidArgument("central point has dimension " + std::to_string(center.point.size()) +
                          ", polytope has " + std::to_string(dim()));
  }
  HPolytope out(directions_, offsets_);
  out.center_proj_.resize(size());
  out.center_slack_.resize(size());
  for (std::size_t i = 0; i < size(); ++i) {
    out.center_proj_[i] = dot(directions_[i], center.point);
    out.center_slack_[i] = offsets_[i] - out.center_proj_[i];
  }
  out.center_ = std::move(center);
  return out;
}

bool HPolytope::has_interior_center() const noexcept {
  if (!center_) {
    return false;
  }
  return std::all_of(center_slack_.begin(), center_slack_.end(), [](double s) { return s > 0.0; });
}

DirectionSet sample_unit_directions(std::size_t m, std::size_t dim, std::uint64_t seed) {
  if (m == 0 || dim == 0) {
    throw InvalidArgument("sample_unit_directions needs m >= 1 and d >= 1");
  }
  Rng rng(seed);
  std::vector<double> data(m * dim);
  for (std::size_t i = 0; i < m; ++i) {
    rng.unit_vector(std::span<double>(data.data() + i * dim, dim));
  }
  return DirectionSet(dim, std::move(data), seed);
}

bool is_positively_spanning(const DirectionSet& directions, double tol) {
  const std::size_t d = directions.dim();
  if (d == 0 || directions.size() == 0) {
    return false;
  }
  LpProblem lp(d, Vector(d, 0.0));
  for (std::size_t i = 0; i < directions.size(); ++i) {
    lp.add_constraint(directions[i], 0.0);
  }
  Vector e(d, 0.0);
  for (std::size_t j = 0; j < d; ++j) {
    e[j] = 1.0;
    lp.add_constraint(e, 1.0);
    e[j] = -1.0;
    lp.add_constraint(e, 1.0);
    e[j] = 0.0;
  }
  for (std::size_t j = 0; j < d; ++j) {
    for (const double sign : {1.0, -1.0}) {
      Vector objective(d, 0.0);
      objective[j] = sign;
      lp.set_objective(std::move(objective));
      const LpSolution sol = lp_solve(lp);
      if (sol.status != LpStatus::Optimal || *sol.objective_value > tol) {
        return false;
      }
    }
  }
  return true;
}

double ell_max(std::span<const double> values, std::size_t ell) {
  if (ell == 0 || ell > values.size()) {
    throw InvalidArgument("ell-max needs 1 <= ell <= " + std::to_string(values.size()) +
                          ", got ell = " + std::to_string(ell));
  }
  if (ell == 1) {
    return *std::max_element(values.begin(), values.end());
  }
  std::vector<double> tmp(values.begin(), values.end());
  auto nth = tmp.begin() + static_cast<std::ptrdiff_t>(ell - 1);
  std::nth_element(tmp.begin(), nth, tmp.end(), std::greater<>());
  return *nth;
}

HPolytope fit_rpd(const PointCloud& points, const DirectionSet& directions, std::size_t ell) {
  if (points.dim() != directions.dim()) {
    throw InvalidArgument("fit_rpd: points have dimension " + std::to_string(points.dim()) +
                          ", directions have dimension " + std::to_string(directions.dim()));
  }
  const std::size_t n = points.size();
  if (ell == 0 || ell > n) {
    throw InvalidArgument("fit_rpd: ell = " + std::to_string(ell) + " but the cloud has " +
                          std::to_string(n) + " points");
  }
  const std::size_t m = directions.size();
  Vector offsets(m);
  Vector products(n);
  for (std::size_t i = 0; i < m; ++i) {
    const auto y = directions[i];
    for (std::size_t j = 0; j < n; ++j) {
      products[j] = dot(points[j], y);
    }
    offsets[i] = ell_max(products, ell);
  }
  return HPolytope(directions, std::move(offsets));
}

bool contains(const HPolytope& polytope, std::span<const double> x, double tol) {
  if (x.size() != polytope.dim()) {
    throw InvalidArgument("contains: point has dimension " + std::to_string(x.size()) +
                          ", polytope has " + std::to_string(polytope.dim()));
  }
  const auto& dirs = polytope.directions();
  const auto& b = polytope.offsets();
  for (std::size_t i = 0; i < polytope.size(); ++i) {
    if (dot(dirs[i], x) > b[i] + tol) {
      return false;
    }
  }
  return true;
}

namespace {

void require_interior_center(const HPolytope& polytope) {
  if (!polytope.center()) {
    throw StateError("scaling distance needs a central point");
  }
  const auto& slack = polytope.center_slacks();
  for (std::size_t i = 0; i < slack.size(); ++i) {
    if (!(slack[i] > 0.0)) {
      throw NotInteriorError("central point is not strictly interior: slack of constraint " +
                             std::to_string(i) + " is " + std::to_string(slack[i]));
    }
  }
}

double scaling_distance_unchecked(const HPolytope& polytope, std::span<const double> x) {
  const auto& dirs = polytope.directions();
  const auto& proj = polytope.center_projections();
  const auto& slack = polytope.center_slacks();
  double alpha = 0.0;
  for (std::size_t i = 0; i < polytope.size(); ++i) {
    const double ratio = (dot(dirs[i], x) - proj[i]) / slack[i];
    alpha = std::max(alpha, ratio);
  }
  return alpha;
}

} // namespace

double scaling_distance(const HPolytope& polytope, std::span<const double> x) {
  if (x.size() != polytope.dim()) {
    throw InvalidArgument("scaling_distance: point has dimension " + std::to_string(x.size()) +
                          ", polytope has " + std::to_string(polytope.dim()));
  }
  require_interior_center(polytope);
  return scaling_distance_unchecked(polytope, x);
}

Vector scaling_distances(const HPolytope& polytope, const PointCloud& points) {
  if (points.dim() != polytope.dim()) {
    throw InvalidArgument("scaling_distances: dimension mismatch");
  }
  require_interior_center(polytope);
  Vector out(points.size());
  for (std::size_t j = 0; j < points.size(); ++j) {
    out[j] = scaling_distance_unchecked(polytope, points[j]);
  }
  return out;
}

} // namespace rpd
