#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rpd/linalg.hpp"

namespace rpd {

/// maximize <objective, v> subject to <a_i, v> <= b_i, v free in R^dim.
class LpProblem {
public:
  LpProblem(std::size_t dim, Vector objective);

  void add_constraint(std::span<const double> direction, double offset);
  void set_objective(Vector objective);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t constraint_count() const noexcept { return rhs_.size(); }
  const Vector& objective() const noexcept { return objective_; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {matrix_.data() + i * dim_, dim_};
  }
  double rhs(std::size_t i) const noexcept { return rhs_[i]; }

private:
  std::size_t dim_;
  Vector objective_;
  std::vector<double> matrix_;
  Vector rhs_;
};

enum class LpStatus { Optimal, Unbounded, Infeasible };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::optional<Vector> point;
  std::optional<double> objective_value;
  std::size_t iterations = 0;
};

struct LpOptions {
  double pivot_tol = 1e-10;
  double feasibility_tol = 1e-9;
  /// 0 picks a limit proportional to the tableau size.
  std::size_t max_iterations = 0;
  /// Consecutive degenerate pivots after which pricing switches from
  /// Dantzig's rule to Bland's rule for the rest of the solve.
  std::size_t degenerate_pivot_limit = 50;
};

/// Dense two-phase simplex.
///
/// The solver works on the dual  min <b, y>  s.t.  A^T y = objective, y >= 0,
/// whose tableau has only `dim` rows; the primal optimum is the vertex cut
/// out by the constraints of the optimal dual basis. A dual that fails
/// phase one means the primal is unbounded or infeasible, which a Farkas
/// system  min <b, y>  s.t.  A^T y = 0, sum y <= 1  separates.
///
/// Throws SolverFailure when the iteration limit is hit or the recovered
/// point violates a constraint by more than a few feasibility tolerances.
LpSolution lp_solve(const LpProblem& problem, const LpOptions& options = {});

} // namespace rpd
