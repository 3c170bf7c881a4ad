#include "rpd/lp.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "rpd/errors.hpp"

namespace rpd {

LpProblem::LpProblem(std::size_t dim, Vector objective) : dim_(dim), objective_(std::move(objective)) {
  if (dim_ == 0) {
    throw InvalidArgument("LP dimension must be positive");
  }
  if (objective_.size() != dim_) {
    throw InvalidArgument("LP objective has " + std::to_string(objective_.size()) +
                          " entries, expected " + std::to_string(dim_));
  }
}

void LpProblem::add_constraint(std::span<const double> direction, double offset) {
  if (direction.size() != dim_) {
    throw InvalidArgument("LP constraint has " + std::to_string(direction.size()) +
                          " entries, expected " + std::to_string(dim_));
  }
  matrix_.insert(matrix_.end(), direction.begin(), direction.end());
  rhs_.push_back(offset);
}

void LpProblem::set_objective(Vector objective) {
  if (objective.size() != dim_) {
    throw InvalidArgument("LP objective has " + std::to_string(objective.size()) +
                          " entries, expected " + std::to_string(dim_));
  }
  objective_ = std::move(objective);
}

namespace {

using Tableau = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

enum class Outcome { Optimal, Infeasible, Unbounded };

struct StandardResult {
  Outcome outcome = Outcome::Infeasible;
  std::vector<std::size_t> basis;
  double value = 0.0;
  std::size_t iterations = 0;
};

// minimize <cost, x>  s.t.  M x = r,  x >= 0.
//
// Tableau columns: [0, N) structural, [N, N+R) artificial, N+R right-hand
// side. Row R holds reduced costs; its rhs entry is minus the objective.
// Artificial columns are never priced back in once they leave the basis.
class StandardSimplex {
public:
  StandardSimplex(const Tableau& M, const Eigen::VectorXd& r, const Eigen::VectorXd& cost,
                  const LpOptions& options)
      : rows_(static_cast<std::size_t>(M.rows())), cols_(static_cast<std::size_t>(M.cols())),
        cost_(cost), options_(options) {
    const auto R = static_cast<Eigen::Index>(rows_);
    const auto N = static_cast<Eigen::Index>(cols_);
    tableau_ = Tableau::Zero(R + 1, N + R + 1);
    rhs_col_ = N + R;
    double r_scale = 1.0;
    for (Eigen::Index i = 0; i < R; ++i) {
      const double sign = r(i) < 0.0 ? -1.0 : 1.0;
      tableau_.row(i).head(N) = sign * M.row(i);
      tableau_(i, N + i) = 1.0;
      tableau_(i, rhs_col_) = sign * r(i);
      r_scale = std::max(r_scale, std::abs(r(i)));
    }
    phase_one_tol_ = options_.feasibility_tol * r_scale;
    double c_scale = 1.0;
    for (Eigen::Index j = 0; j < N; ++j) {
      c_scale = std::max(c_scale, std::abs(cost(j)));
    }
    reduced_cost_tol_ = options_.feasibility_tol * c_scale;
    basis_.resize(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      basis_[i] = cols_ + i;
    }
    max_iterations_ = options_.max_iterations != 0
                          ? options_.max_iterations
                          : std::max<std::size_t>(10000, 50 * (rows_ + cols_));
  }

  StandardResult solve() {
    const auto R = static_cast<Eigen::Index>(rows_);
    const auto N = static_cast<Eigen::Index>(cols_);

    // Phase one: minimize the sum of artificials.
    for (Eigen::Index j = 0; j < N; ++j) {
      tableau_(R, j) = -tableau_.col(j).head(R).sum();
    }
    tableau_(R, rhs_col_) = -tableau_.col(rhs_col_).head(R).sum();
    if (run(options_.feasibility_tol) != Outcome::Optimal) {
      throw SolverFailure(diagnostics("phase one reported an unbounded ray"));
    }
    StandardResult result;
    if (-tableau_(R, rhs_col_) > phase_one_tol_) {
      result.outcome = Outcome::Infeasible;
      result.iterations = iterations_;
      return result;
    }
    drive_out_artificials();

    // Phase two: the real cost.
    tableau_.row(R).setZero();
    for (Eigen::Index j = 0; j < N; ++j) {
      tableau_(R, j) = cost_(j);
    }
    for (Eigen::Index i = 0; i < R; ++i) {
      const std::size_t b = basis_[static_cast<std::size_t>(i)];
      if (b < cols_ && cost_(static_cast<Eigen::Index>(b)) != 0.0) {
        tableau_.row(R) -= cost_(static_cast<Eigen::Index>(b)) * tableau_.row(i);
      }
    }
    result.outcome = run(reduced_cost_tol_);
    result.basis = basis_;
    result.value = -tableau_(R, rhs_col_);
    result.iterations = iterations_;
    return result;
  }

private:
  Outcome run(double reduced_tol) {
    const auto R = static_cast<Eigen::Index>(rows_);
    bool bland = false;
    std::size_t degenerate = 0;
    while (true) {
      std::size_t q = kNone;
      double most_negative = -reduced_tol;
      for (std::size_t j = 0; j < cols_; ++j) {
        const double dj = tableau_(R, static_cast<Eigen::Index>(j));
        if (bland) {
          if (dj < -reduced_tol) {
            q = j;
            break;
          }
        } else if (dj < most_negative) {
          most_negative = dj;
          q = j;
        }
      }
      if (q == kNone) {
        return Outcome::Optimal;
      }

      const auto qi = static_cast<Eigen::Index>(q);
      std::size_t p = kNone;
      double best_ratio = std::numeric_limits<double>::infinity();
      double best_pivot = 0.0;
      for (Eigen::Index i = 0; i < R; ++i) {
        const double a = tableau_(i, qi);
        if (a <= options_.pivot_tol) {
          continue;
        }
        const double ratio = std::max(tableau_(i, rhs_col_), 0.0) / a;
        const double tie = 1e-12 * std::max(1.0, std::abs(best_ratio));
        const auto iu = static_cast<std::size_t>(i);
        if (p == kNone || ratio < best_ratio - tie) {
          p = iu;
          best_ratio = ratio;
          best_pivot = a;
        } else if (ratio <= best_ratio + tie) {
          const bool take = bland ? basis_[iu] < basis_[p] : a > best_pivot;
          if (take) {
            p = iu;
            best_ratio = std::min(best_ratio, ratio);
            best_pivot = a;
          }
        }
      }
      if (p == kNone) {
        return Outcome::Unbounded;
      }

      if (++iterations_ > max_iterations_) {
        throw SolverFailure(diagnostics("iteration limit reached"));
      }
      degenerate = best_ratio <= 1e-14 ? degenerate + 1 : 0;
      if (degenerate > options_.degenerate_pivot_limit) {
        bland = true;
      }
      pivot(p, q);
    }
  }

  void pivot(std::size_t p, std::size_t q) {
    const auto pi = static_cast<Eigen::Index>(p);
    const auto qi = static_cast<Eigen::Index>(q);
    tableau_.row(pi) /= tableau_(pi, qi);
    tableau_(pi, qi) = 1.0;
    for (Eigen::Index i = 0; i < tableau_.rows(); ++i) {
      if (i == pi) {
        continue;
      }
      const double f = tableau_(i, qi);
      if (f != 0.0) {
        tableau_.row(i) -= f * tableau_.row(pi);
        tableau_(i, qi) = 0.0;
      }
      if (i < static_cast<Eigen::Index>(rows_)) {
        double& rhs = tableau_(i, rhs_col_);
        if (rhs < 0.0 && rhs > -options_.feasibility_tol) {
          rhs = 0.0;
        }
      }
    }
    basis_[p] = q;
  }

  // Artificials left in the basis at level zero are swapped for any
  // structural column with a usable entry in their row. If the row has none
  // it is redundant and the artificial stays, pinned at zero.
  void drive_out_artificials() {
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < cols_) {
        continue;
      }
      const auto ii = static_cast<Eigen::Index>(i);
      std::size_t best = kNone;
      double best_abs = options_.pivot_tol;
      for (std::size_t j = 0; j < cols_; ++j) {
        const double a = std::abs(tableau_(ii, static_cast<Eigen::Index>(j)));
        if (a > best_abs) {
          best_abs = a;
          best = j;
        }
      }
      if (best != kNone) {
        tableau_(ii, rhs_col_) = 0.0;
        pivot(i, best);
      }
    }
  }

  std::string diagnostics(const std::string& what) const {
    std::ostringstream os;
    os << "simplex: " << what << " (rows=" << rows_ << ", columns=" << cols_
       << ", iterations=" << iterations_ << ")";
    return os.str();
  }

  std::size_t rows_;
  std::size_t cols_;
  Eigen::VectorXd cost_;
  LpOptions options_;
  Tableau tableau_;
  Eigen::Index rhs_col_ = 0;
  std::vector<std::size_t> basis_;
  double phase_one_tol_ = 0.0;
  double reduced_cost_tol_ = 0.0;
  std::size_t iterations_ = 0;
  std::size_t max_iterations_ = 0;
};

// Farkas alternative: {A v <= b} is empty iff some y >= 0 has A^T y = 0 and
// <b, y> < 0. Normalizing sum y <= 1 makes the auxiliary LP bounded.
bool primal_is_infeasible(const LpProblem& problem, const LpOptions& options,
                          std::size_t& iterations) {
  const auto d = static_cast<Eigen::Index>(problem.dim());
  const auto m = static_cast<Eigen::Index>(problem.constraint_count());
  Tableau M = Tableau::Zero(d + 1, m + 1);
  Eigen::VectorXd r = Eigen::VectorXd::Zero(d + 1);
  Eigen::VectorXd cost = Eigen::VectorXd::Zero(m + 1);
  double b_scale = 1.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto a = problem.row(static_cast<std::size_t>(i));
    for (Eigen::Index j = 0; j < d; ++j) {
      M(j, i) = a[static_cast<std::size_t>(j)];
    }
    M(d, i) = 1.0;
    cost(i) = problem.rhs(static_cast<std::size_t>(i));
    b_scale = std::max(b_scale, std::abs(cost(i)));
  }
  M(d, m) = 1.0;
  r(d) = 1.0;
  StandardSimplex farkas(M, r, cost, options);
  const StandardResult res = farkas.solve();
  iterations += res.iterations;
  if (res.outcome != Outcome::Optimal) {
    throw SolverFailure("simplex: Farkas system did not reach an optimum");
  }
  return res.value < -options.feasibility_tol * b_scale;
}

} // namespace

LpSolution lp_solve(const LpProblem& problem, const LpOptions& options) {
  const std::size_t m = problem.constraint_count();
  const std::size_t d = problem.dim();
  if (m == 0) {
    throw InvalidArgument("LP needs at least one constraint");
  }

  const auto di = static_cast<Eigen::Index>(d);
  const auto mi = static_cast<Eigen::Index>(m);
  Tableau M(di, mi);
  Eigen::VectorXd cost(mi);
  double b_scale = 1.0;
  for (Eigen::Index i = 0; i < mi; ++i) {
    const auto a = problem.row(static_cast<std::size_t>(i));
    for (Eigen::Index j = 0; j < di; ++j) {
      M(j, i) = a[static_cast<std::size_t>(j)];
    }
    cost(i) = problem.rhs(static_cast<std::size_t>(i));
    b_scale = std::max(b_scale, std::abs(cost(i)));
  }
  const Eigen::Map<const Eigen::VectorXd> objective(problem.objective().data(), di);

  StandardSimplex dual(M, objective, cost, options);
  const StandardResult res = dual.solve();

  LpSolution sol;
  sol.iterations = res.iterations;
  if (res.outcome == Outcome::Unbounded) {
    sol.status = LpStatus::Infeasible;
    return sol;
  }
  if (res.outcome == Outcome::Infeasible) {
    sol.status = primal_is_infeasible(problem, options, sol.iterations) ? LpStatus::Infeasible
                                                                        : LpStatus::Unbounded;
    return sol;
  }

  // The optimal dual basis names d constraints that are tight at the primal
  // optimum (or pins a coordinate to zero for a redundant row).
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(di, di);
  Eigen::VectorXd t(di);
  for (Eigen::Index k = 0; k < di; ++k) {
    const std::size_t b = res.basis[static_cast<std::size_t>(k)];
    if (b < m) {
      const auto a = problem.row(b);
      for (Eigen::Index j = 0; j < di; ++j) {
        S(k, j) = a[static_cast<std::size_t>(j)];
      }
      t(k) = problem.rhs(b);
    } else {
      S(k, static_cast<Eigen::Index>(b - m)) = 1.0;
      t(k) = 0.0;
    }
  }
  const Eigen::VectorXd v = S.fullPivLu().solve(t);

  Vector point(v.data(), v.data() + di);
  double violation = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    violation = std::max(violation, dot(problem.row(i), point) - problem.rhs(i));
  }
  if (!std::isfinite(violation) || violation > 100.0 * options.feasibility_tol * b_scale) {
    std::ostringstream os;
    os << "simplex: recovered point violates a constraint by " << violation
       << " (constraints=" << m << ", dim=" << d << ", iterations=" << res.iterations << ")";
    throw SolverFailure(os.str());
  }
  sol.status = LpStatus::Optimal;
  sol.objective_value = dot(problem.objective(), point);
  sol.point = std::move(point);
  return sol;
}

} // namespace rpd
