#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rpd/geometry.hpp"
#include "rpd/lp.hpp"

namespace rpd {

struct ChebyshevBall {
  Vector center;
  double radius = 0.0;
  /// The center is strictly interior iff the radius is positive.
  bool degenerate() const noexcept { return !(radius > 0.0); }
};

/// Center of the largest inscribed ball: maximize r subject to
/// <y_i, c> + r <= b_i and r >= 0 (valid because every ||y_i|| = 1).
/// Throws NotBoundedError if the LP is unbounded and DegeneratePolytopeError
/// if the polytope is empty. A radius below the LP feasibility tolerance is
/// reported as exactly zero, and is returned, not thrown.
ChebyshevBall chebyshev_center(const HPolytope& polytope, const LpOptions& options = {});

/// Optimal vertex of the LP whose objective is a uniformly random unit
/// vector drawn from `seed`. Throws NotBoundedError for unbounded P.
Vector random_vertex(const HPolytope& polytope, std::uint64_t seed, const LpOptions& options = {});

/// Mean of `samples` random vertices, sample i using derive_seed(seed, i).
///
/// Concentration of this mean around the vertex barycenter for random
/// polytopes over a sphere sample holds once
///     s > 1 + (2/d) log(2/p) * e/(e-1) * 1 / (eps^2 (1-h0)^2)
/// with h0 the Hausdorff distance of conv(X) to the sphere. The printed
/// bound can also be grouped as
///     s > (1 + (2/d) log(2/p)) * e/(e-1) * 1 / (eps^2 (1-h0)^2)
/// and h0 has no meaning outside the sphere model, so s is left to callers.
Vector vertex_barycenter_estimate(const HPolytope& polytope, std::size_t samples,
                                  std::uint64_t seed, const LpOptions& options = {});

struct VertexEnumerationOptions {
  /// Refuse dimensions above this; the cost is C(m, d) small solves.
  std::size_t max_dim = 4;
  double feasibility_tol = kDefaultTolerance;
  /// Points closer than this are merged.
  double dedup_radius = 1e-7;
};

/// Brute-force vertex enumeration: every d-subset of constraints with an
/// invertible direction matrix gives a candidate, kept if feasible.
/// The result is sorted lexicographically. Throws InvalidArgument when
/// d > max_dim.
std::vector<Vector> enumerate_vertices(const HPolytope& polytope,
                                       const VertexEnumerationOptions& options = {});

enum class CenterFallback { None, Chebyshev };

/// Returns P unchanged if its center is strictly interior. Otherwise, with
/// CenterFallback::Chebyshev, attaches the Chebyshev center (policy tag
/// Chebyshev); a zero radius raises NotInteriorError. With None it raises
/// StateError / NotInteriorError like scaling_distance.
HPolytope with_interior_center(const HPolytope& polytope, CenterFallback fallback,
                               const LpOptions& options = {});

/// scaling_distance with an optional automatic Chebyshev fallback.
double scaling_distance(const HPolytope& polytope, std::span<const double> x,
                        CenterFallback fallback);

/// Bounding box of P along the coordinate axes via 2d linear programs.
/// Returns {lower, upper}. Throws NotBoundedError if P is unbounded.
std::pair<Vector, Vector> bounding_box(const HPolytope& polytope, const LpOptions& options = {});

} // namespace rpd
