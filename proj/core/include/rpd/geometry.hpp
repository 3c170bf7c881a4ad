#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rpd/linalg.hpp"

namespace rpd {

/// Absolute tolerance on inequality slack used by containment tests.
inline constexpr double kDefaultTolerance = 1e-9;

/// n points in R^d, stored row-major.
class PointCloud {
public:
  PointCloud() = default;
  /// `coordinates` holds n*dim values, point after point. Requires dim >= 1
  /// and n >= 1.
  PointCloud(std::size_t dim, std::vector<double> coordinates);

  static PointCloud from_rows(const std::vector<Vector>& rows);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  bool empty() const noexcept { return coords_.empty(); }

  std::span<const double> operator[](std::size_t i) const noexcept {
    return {coords_.data() + i * dim_, dim_};
  }
  std::span<const double> coordinates() const noexcept { return coords_; }

  Vector mean() const;

private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

/// A finite set of unit vectors Y in R^d. Every row has norm 1 within 1e-12.
class DirectionSet {
public:
  DirectionSet() = default;
  DirectionSet(std::size_t dim, std::vector<double> directions,
               std::optional<std::uint64_t> seed = std::nullopt);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return dim_ == 0 ? 0 : data_.size() / dim_; }
  std::span<const double> operator[](std::size_t i) const noexcept {
    return {data_.data() + i * dim_, dim_};
  }
  std::span<const double> data() const noexcept { return data_; }
  /// Seed the set was sampled with; empty for hand-built sets.
  std::optional<std::uint64_t> seed() const noexcept { return seed_; }

  /// The directions at `indices`, in that order.
  DirectionSet subset(std::span<const std::size_t> indices) const;

private:
  std::size_t dim_ = 0;
  std::vector<double> data_;
  std::optional<std::uint64_t> seed_;
};

/// How a polytope's central point was obtained.
enum class CenterPolicy { SampleMean, Chebyshev, VertexBarycenter, UserSupplied };

std::string_view to_string(CenterPolicy policy) noexcept;
/// Accepts "sample-mean", "chebyshev", "vertex-barycenter", "user-supplied".
CenterPolicy parse_center_policy(std::string_view name);

struct CentralPoint {
  Vector point;
  CenterPolicy policy = CenterPolicy::UserSupplied;
};

/// {v : <v, y_i> <= b_i for all i}, optionally with a central point.
///
/// The object is immutable; with_center() returns a copy. When a center is
/// attached, its projections <c, y_i> and slacks b_i - <c, y_i> are cached so
/// that scaling distances cost one pass over the directions.
class HPolytope {
public:
  HPolytope() = default;
  HPolytope(DirectionSet directions, Vector offsets);

  HPolytope with_center(CentralPoint center) const;
  HPolytope without_center() const { return HPolytope(directions_, offsets_); }

  std::size_t dim() const noexcept { return directions_.dim(); }
  std::size_t size() const noexcept { return offsets_.size(); }
  const DirectionSet& directions() const noexcept { return directions_; }
  const Vector& offsets() const noexcept { return offsets_; }
  const std::optional<CentralPoint>& center() const noexcept { return center_; }

  /// Cached b_i - <c, y_i>; empty without a center.
  const Vector& center_slacks() const noexcept { return center_slack_; }
  const Vector& center_projections() const noexcept { return center_proj_; }
  /// True iff a center is attached and every slack is strictly positive.
  bool has_interior_center() const noexcept;

private:
  DirectionSet directions_;
  Vector offsets_;
  std::optional<CentralPoint> center_;
  Vector center_proj_;
  Vector center_slack_;
};

/// m directions drawn i.i.d. uniformly from S^{d-1} (normalized Gaussians).
DirectionSet sample_unit_directions(std::size_t m, std::size_t dim, std::uint64_t seed);

/// Whether conv(Y) contains the origin in its interior, decided by 2d
/// linear programs max <±e_j, w> over {<y_i, w> <= 0, |w_k| <= 1}.
bool is_positively_spanning(const DirectionSet& directions, double tol = kDefaultTolerance);

/// The ell-th largest entry, duplicates counted (ell = 1 is the maximum).
double ell_max(std::span<const double> values, std::size_t ell);

/// Random polytope descriptor: b_i is the ell-max of <x, y_i> over the
/// cloud. With ell = 1 this is the dual bounding body of the cloud.
HPolytope fit_rpd(const PointCloud& points, const DirectionSet& directions, std::size_t ell);

bool contains(const HPolytope& polytope, std::span<const double> x,
              double tol = kDefaultTolerance);

/// Smallest alpha >= 0 with x in alpha (P - c) + c, where c is the attached
/// central point. Closed form: max_i max(0, <x - c, y_i> / (b_i - <c, y_i>)).
/// Throws StateError without a center, NotInteriorError if some slack <= 0.
double scaling_distance(const HPolytope& polytope, std::span<const double> x);

/// scaling_distance for every point of the cloud.
Vector scaling_distances(const HPolytope& polytope, const PointCloud& points);

} // namespace rpd
