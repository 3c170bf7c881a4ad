#include "rpd/polytope_ops.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rpd/errors.hpp"
#include "rpd/random.hpp"

namespace rpd {

namespace {

LpProblem polytope_lp(const HPolytope& polytope, Vector objective) {
  LpProblem lp(polytope.dim(), std::move(objective));
  for (std::size_t i = 0; i < polytope.size(); ++i) {
    lp.add_constraint(polytope.directions()[i], polytope.offsets()[i]);
  }
  return lp;
}

Vector optimal_point(const HPolytope& polytope, Vector objective, const LpOptions& options) {
  const LpSolution sol = lp_solve(polytope_lp(polytope, std::move(objective)), options);
  switch (sol.status) {
  case LpStatus::Unbounded:
    throw NotBoundedError("polytope is unbounded in the sampled objective direction");
  case LpStatus::Infeasible:
    throw DegeneratePolytopeError("polytope is empty");
  case LpStatus::Optimal:
    break;
  }
  return *sol.point;
}

// Solves the d x d system S v = t by Gaussian elimination with partial
// pivoting. Returns false if a pivot falls below `singular_tol`.
bool solve_small(std::vector<double>& S, std::vector<double>& t, std::size_t d,
                 double singular_tol) {
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t piv = col;
    double best = std::abs(S[col * d + col]);
    for (std::size_t r = col + 1; r < d; ++r) {
      const double a = std::abs(S[r * d + col]);
      if (a > best) {
        best = a;
        piv = r;
      }
    }
    if (best < singular_tol) {
      return false;
    }
    if (piv != col) {
      for (std::size_t k = 0; k < d; ++k) {
        std::swap(S[col * d + k], S[piv * d + k]);
      }
      std::swap(t[col], t[piv]);
    }
    const double inv = 1.0 / S[col * d + col];
    for (std::size_t r = col + 1; r < d; ++r) {
      const double f = S[r * d + col] * inv;
      if (f == 0.0) {
        continue;
      }
      for (std::size_t k = col; k < d; ++k) {
        S[r * d + k] -= f * S[col * d + k];
      }
      t[r] -= f * t[col];
    }
  }
  for (std::size_t col = d; col-- > 0;) {
    double s = t[col];
    for (std::size_t k = col + 1; k < d; ++k) {
      s -= S[col * d + k] * t[k];
    }
    t[col] = s / S[col * d + col];
  }
  return true;
}

} // namespace

ChebyshevBall chebyshev_center(const HPolytope& polytope, const LpOptions& options) {
  const std::size_t d = polytope.dim();
  Vector objective(d + 1, 0.0);
  objective[d] = 1.0;
  LpProblem lp(d + 1, std::move(objective));
  Vector row(d + 1);
  for (std::size_t i = 0; i < polytope.size(); ++i) {
    const auto y = polytope.directions()[i];
    std::copy(y.begin(), y.end(), row.begin());
    row[d] = 1.0;
    lp.add_constraint(row, polytope.offsets()[i]);
  }
  std::fill(row.begin(), row.end(), 0.0);
  row[d] = -1.0;
  lp.add_constraint(row, 0.0);

  const LpSolution sol = lp_solve(lp, options);
  if (sol.status == LpStatus::Unbounded) {
    throw NotBoundedError("Chebyshev LP is unbounded; directions are not positively spanning");
  }
  if (sol.status == LpStatus::Infeasible) {
    throw DegeneratePolytopeError("Chebyshev LP is infeasible; the polytope is empty");
  }
  ChebyshevBall ball;
  ball.center.assign(sol.point->begin(), sol.point->begin() + static_cast<std::ptrdiff_t>(d));
  const double r = (*sol.point)[d];
  ball.radius = r < options.feasibility_tol ? 0.0 : r;
  return ball;
}

Vector random_vertex(const HPolytope& polytope, std::uint64_t seed, const LpOptions& options) {
  Rng rng(seed);
  Vector objective(polytope.dim());
  rng.unit_vector(objective);
  return optimal_point(polytope, std::move(objective), options);
}

Vector vertex_barycenter_estimate(const HPolytope& polytope, std::size_t samples,
                                  std::uint64_t seed, const LpOptions& options) {
  if (samples == 0) {
    throw InvalidArgument("vertex_barycenter_estimate needs at least one sample");
  }
  Vector sum(polytope.dim(), 0.0);
  for (std::size_t s = 0; s < samples; ++s) {
    const Vector v = random_vertex(polytope, derive_seed(seed, s), options);
    for (std::size_t j = 0; j < sum.size(); ++j) {
      sum[j] += v[j];
    }
  }
  for (double& x : sum) {
    x /= static_cast<double>(samples);
  }
  return sum;
}

std::vector<Vector> enumerate_vertices(const HPolytope& polytope,
                                       const VertexEnumerationOptions& options) {
  const std::size_t d = polytope.dim();
  const std::size_t m = polytope.size();
  if (d > options.max_dim) {
    throw InvalidArgument("enumerate_vertices refuses d = " + std::to_string(d) +
                          " (guard max_d = " + std::to_string(options.max_dim) + ")");
  }
  std::vector<Vector> candidates;
  if (m < d) {
    return candidates;
  }
  const auto& dirs = polytope.directions();
  const auto& b = polytope.offsets();

  std::vector<std::size_t> idx(d);
  for (std::size_t k = 0; k < d; ++k) {
    idx[k] = k;
  }
  std::vector<double> S(d * d);
  std::vector<double> t(d);
  std::size_t last_violated = 0;
  while (true) {
    for (std::size_t r = 0; r < d; ++r) {
      const auto y = dirs[idx[r]];
      std::copy(y.begin(), y.end(), S.begin() + static_cast<std::ptrdiff_t>(r * d));
      t[r] = b[idx[r]];
    }
    if (solve_small(S, t, d, 1e-12)) {
      // Infeasible candidates usually fail on the constraint that rejected
      // the previous one, so try that first.
      bool feasible = dot(dirs[last_violated], t) <= b[last_violated] + options.feasibility_tol;
      if (feasible) {
        for (std::size_t i = 0; i < m; ++i) {
          if (dot(dirs[i], t) > b[i] + options.feasibility_tol) {
            feasible = false;
            last_violated = i;
            break;
          }
        }
      }
      if (feasible) {
        candidates.push_back(t);
      }
    }
    // Next d-combination in lexicographic order.
    std::size_t k = d;
    while (k > 0 && idx[k - 1] == m - d + (k - 1)) {
      --k;
    }
    if (k == 0) {
      break;
    }
    ++idx[k - 1];
    for (std::size_t j = k; j < d; ++j) {
      idx[j] = idx[j - 1] + 1;
    }
  }

  std::sort(candidates.begin(), candidates.end());
  std::vector<Vector> vertices;
  for (auto& c : candidates) {
    bool duplicate = false;
    for (auto it = vertices.rbegin(); it != vertices.rend(); ++it) {
      if ((*it)[0] < c[0] - options.dedup_radius) {
        break;
      }
      if (euclidean_distance(*it, c) < options.dedup_radius) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) {
      vertices.push_back(std::move(c));
    }
  }
  return vertices;
}

HPolytope with_interior_center(const HPolytope& polytope, CenterFallback fallback,
                               const LpOptions& options) {
  if (polytope.has_interior_center()) {
    return polytope;
  }
  if (fallback == CenterFallback::None) {
    if (!polytope.center()) {
      throw StateError("polytope has no central point");
    }
    throw NotInteriorError("central point is not strictly interior");
  }
  const ChebyshevBall ball = chebyshev_center(polytope, options);
  if (ball.degenerate()) {
    throw NotInteriorError("Chebyshev radius is zero; the polytope is not full-dimensional");
  }
  return polytope.with_center({ball.center, CenterPolicy::Chebyshev});
}

double scaling_distance(const HPolytope& polytope, std::span<const double> x,
                        CenterFallback fallback) {
  if (fallback == CenterFallback::None || polytope.has_interior_center()) {
    return scaling_distance(polytope, x);
  }
  return scaling_distance(with_interior_center(polytope, fallback), x);
}

std::pair<Vector, Vector> bounding_box(const HPolytope& polytope, const LpOptions& options) {
  const std::size_t d = polytope.dim();
  Vector lo(d), hi(d);
  for (std::size_t j = 0; j < d; ++j) {
    Vector e(d, 0.0);
    e[j] = 1.0;
    hi[j] = optimal_point(polytope, e, options)[j];
    e[j] = -1.0;
    lo[j] = optimal_point(polytope, e, options)[j];
  }
  return {lo, hi};
}

} // namespace rpd
