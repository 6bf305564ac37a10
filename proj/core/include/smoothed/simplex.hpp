#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "smoothed/geometry.hpp"

namespace smoothed {

/// maximize c.x  subject to  A x <= b,  x >= 0.  Rows may have negative b.
struct LinearProgram {
  std::size_t num_vars = 0;
  Vector objective;
  std::vector<Vector> rows;
  Vector rhs;

  explicit LinearProgram(std::size_t n = 0) : num_vars(n), objective(n, 0.0) {}
  void add_row(Vector coeffs, double b);
};

enum class LpStatus { kOptimal, kUnbounded, kInfeasible, kIterationLimit };
std::string to_string(LpStatus s);

enum class PivotRule {
  kBland,  // smallest eligible index, always
  kDantzigThenBland,  // largest reduced cost; Bland during long degenerate runs
};

struct SimplexOptions {
  PivotRule rule = PivotRule::kDantzigThenBland;
  std::size_t max_iterations = 1'000'000;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-9;
  std::size_t degenerate_streak = 50;
};

struct LinearProgramSolution {
  LpStatus status = LpStatus::kInfeasible;
  double objective = 0.0;
  Vector x;
  Vector duals;  // one per row, >= 0 at optimality
  std::size_t iterations = 0;
  double max_residual = 0.0;  // max_r (A x - b)_r, clamped at 0
};

/// Dense dictionary simplex.
///
/// Each row r reads  x_B(r) = b_r - sum_j a_rj x_N(j)  and the objective row
/// z = z0 + sum_j c_j x_N(j). Infeasible starting dictionaries go through the
/// auxiliary-variable phase one. Rows added after an optimal solve are
/// restored by dual simplex pivots from the current basis.
class SimplexSolver {
 public:
  explicit SimplexSolver(const LinearProgram& lp, SimplexOptions options = {});

  LpStatus solve();
  /// Appends coeffs . x <= b and reoptimizes with the dual simplex.
  LpStatus add_row_and_resolve(const Vector& coeffs, double b);
  /// Appends several rows, then reoptimizes once.
  LpStatus add_rows_and_resolve(const std::vector<Vector>& coeffs, const Vector& b);

  /// Drops rows with index >= first whose slack is basic at a value above
  /// tol. The current basis stays optimal; dropped rows keep counting toward
  /// max_residual and report a zero dual. Returns the number dropped.
  std::size_t drop_slack_rows(std::size_t first, double tol);

  LinearProgramSolution solution() const;
  std::size_t num_rows() const { return rows_.size(); }
  /// Objective value carried by the dictionary (z0), as opposed to c.x
  /// recomputed from the solution.
  double tableau_objective() const { return z_; }
  std::size_t iterations() const { return iterations_; }

 private:
  void pivot(std::size_t r, std::size_t j);
  LpStatus primal();
  LpStatus dual();
  LpStatus phase_one();
  void append_row(const Vector& coeffs, double b);
  void set_objective_from_original();

  SimplexOptions opt_;
  std::size_t n_ = 0;               // original variables
  struct SparseRow {
    std::vector<std::size_t> index;
    Vector value;
  };
  std::vector<SparseRow> orig_rows_;  // kept for residual reporting
  Vector orig_rhs_;
  Vector orig_obj_;

  std::vector<Vector> rows_;  // a_rj
  Vector b_;
  Vector c_;
  double z_ = 0.0;
  std::vector<std::size_t> basic_;     // row -> variable id
  std::vector<std::size_t> nonbasic_;  // column -> variable id
  // variable id -> position: >= 0 row index when basic (encoded), column otherwise
  std::vector<std::size_t> where_;
  std::vector<bool> is_basic_;
  std::vector<std::size_t> nz_;  // scratch: nonzero columns of the pivot row
  std::size_t iterations_ = 0;
  LpStatus status_ = LpStatus::kInfeasible;
  bool solved_ = false;
};

/// One-shot convenience wrapper.
LinearProgramSolution lp_solve(const LinearProgram& lp, SimplexOptions options = {});

}  // namespace smoothed
