#include "smoothed/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace smoothed {

namespace {
constexpr std::size_t kAuxId = std::numeric_limits<std::size_t>::max();
constexpr double kFeasTol = 1e-9;
}  // namespace

void LinearProgram::add_row(Vector coeffs, double b) {
  if (coeffs.size() != num_vars) throw DimensionError("LinearProgram::add_row: wrong row length");
  rows.push_back(std::move(coeffs));
  rhs.push_back(b);
}

std::string to_string(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kIterationLimit: return "iteration-limit";
  }
  return "unknown";
}

SimplexSolver::SimplexSolver(const LinearProgram& lp, SimplexOptions options)
    : opt_(options), n_(lp.num_vars), orig_obj_(lp.objective) {
  if (lp.objective.size() != n_) throw DimensionError("lp_solve: objective length differs from num_vars");
  if (lp.rows.size() != lp.rhs.size()) throw DimensionError("lp_solve: rows and rhs differ in length");
  for (const Vector& r : lp.rows) {
    if (r.size() != n_) throw DimensionError("lp_solve: row length differs from num_vars");
  }
  for (double x : lp.objective) {
    if (!std::isfinite(x)) throw std::invalid_argument("lp_solve: non-finite objective coefficient");
  }
  c_ = orig_obj_;
  nonbasic_.resize(n_);
  is_basic_.assign(n_, false);
  where_.resize(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    nonbasic_[j] = j;
    where_[j] = j;
  }
  for (std::size_t r = 0; r < lp.rows.size(); ++r) append_row(lp.rows[r], lp.rhs[r]);
}

void SimplexSolver::append_row(const Vector& coeffs, double b) {
  if (coeffs.size() != n_) throw DimensionError("add_row: wrong row length");
  for (double x : coeffs) {
    if (!std::isfinite(x)) throw std::invalid_argument("lp_solve: non-finite constraint coefficient");
  }
  if (!std::isfinite(b)) throw std::invalid_argument("lp_solve: non-finite right-hand side");
  const std::size_t cols = nonbasic_.size();
  Vector row(cols, 0.0);
  double rhs = b;
  for (std::size_t j = 0; j < cols; ++j) {
    const std::size_t id = nonbasic_[j];
    if (id < n_) row[j] = coeffs[id];
  }
  for (std::size_t k = 0; k < n_; ++k) {
    if (!is_basic_[k] || coeffs[k] == 0.0) continue;
    const std::size_t r = where_[k];
    rhs -= coeffs[k] * b_[r];
    const Vector& src = rows_[r];
    for (std::size_t j = 0; j < cols; ++j) row[j] -= coeffs[k] * src[j];
  }
  const std::size_t id = n_ + orig_rows_.size();
  SparseRow sparse;
  for (std::size_t k = 0; k < n_; ++k) {
    if (coeffs[k] != 0.0) {
      sparse.index.push_back(k);
      sparse.value.push_back(coeffs[k]);
    }
  }
  orig_rows_.push_back(std::move(sparse));
  orig_rhs_.push_back(b);
  rows_.push_back(std::move(row));
  b_.push_back(rhs);
  basic_.push_back(id);
  is_basic_.push_back(true);
  where_.push_back(rows_.size() - 1);
}

void SimplexSolver::pivot(std::size_t r, std::size_t j) {
  Vector& pr = rows_[r];
  const double inv = 1.0 / pr[j];
  const std::size_t cols = pr.size();
  for (std::size_t k = 0; k < cols; ++k) pr[k] *= inv;
  pr[j] = inv;
  b_[r] *= inv;
  // the pivot row is often sparse; only its nonzero columns change elsewhere
  nz_.clear();
  for (std::size_t k = 0; k < cols; ++k) {
    if (k != j && pr[k] != 0.0) nz_.push_back(k);
  }
  const bool sparse = nz_.size() * 4 < cols;
  const double* src = pr.data();
  auto eliminate = [&](Vector& row, double f) {
    double* dst = row.data();
    if (sparse) {
      for (std::size_t k : nz_) dst[k] -= f * src[k];
    } else {
      for (std::size_t k = 0; k < cols; ++k) dst[k] -= f * src[k];
    }
    dst[j] = -f * inv;
  };
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (i == r) continue;
    const double f = rows_[i][j];
    if (f == 0.0) continue;
    eliminate(rows_[i], f);
    b_[i] -= f * b_[r];
  }
  const double f = c_[j];
  if (f != 0.0) {
    eliminate(c_, f);
    z_ += f * b_[r];
  }
  const std::size_t entering = nonbasic_[j];
  const std::size_t leaving = basic_[r];
  basic_[r] = entering;
  nonbasic_[j] = leaving;
  if (entering != kAuxId) {
    is_basic_[entering] = true;
    where_[entering] = r;
  }
  if (leaving != kAuxId) {
    is_basic_[leaving] = false;
    where_[leaving] = j;
  }
  ++iterations_;
}

LpStatus SimplexSolver::primal() {
  bool bland = opt_.rule == PivotRule::kBland;
  std::size_t streak = 0;
  while (true) {
    if (iterations_ >= opt_.max_iterations) return LpStatus::kIterationLimit;
    const std::size_t cols = c_.size();
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (c_[j] <= opt_.optimality_tol) continue;
      if (enter == cols) {
        enter = j;
      } else if (bland ? nonbasic_[j] < nonbasic_[enter] : c_[j] > c_[enter]) {
        enter = j;
      }
    }
    if (enter == cols) return LpStatus::kOptimal;

    std::size_t leave = rows_.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const double a = rows_[r][enter];
      if (a <= opt_.pivot_tol) continue;
      const double ratio = std::max(b_[r], 0.0) / a;
      if (leave == rows_.size() || ratio < best - 1e-12 * std::max(1.0, best)) {
        best = ratio;
        leave = r;
      } else if (ratio <= best + 1e-12 * std::max(1.0, best)) {
        const bool better = bland ? basic_[r] < basic_[leave] : a > rows_[leave][enter];
        if (better) leave = r;
      }
    }
    if (leave == rows_.size()) return LpStatus::kUnbounded;

    if (best <= 1e-12) {
      if (++streak >= opt_.degenerate_streak && opt_.rule == PivotRule::kDantzigThenBland) bland = true;
    } else {
      streak = 0;
      if (opt_.rule == PivotRule::kDantzigThenBland) bland = false;
    }
    pivot(leave, enter);
  }
}

LpStatus SimplexSolver::dual() {
  while (true) {
    if (iterations_ >= opt_.max_iterations) return LpStatus::kIterationLimit;
    // most infeasible row relative to its length (a cheap dual steepest edge)
    std::size_t leave = rows_.size();
    double worst = 0.0;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (b_[r] >= -kFeasTol) continue;
      double norm = 1.0;
      for (double a : rows_[r]) norm += a * a;
      const double score = b_[r] * b_[r] / norm;
      if (leave == rows_.size() || score > worst || (score == worst && basic_[r] < basic_[leave])) {
        leave = r;
        worst = score;
      }
    }
    if (leave == rows_.size()) return LpStatus::kOptimal;

    const Vector& row = rows_[leave];
    std::size_t enter = c_.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < c_.size(); ++j) {
      const double a = row[j];
      if (a >= -opt_.pivot_tol) continue;
      const double ratio = std::min(c_[j], 0.0) / a;
      const double eps = 1e-12 * std::max(1.0, best);
      if (enter == c_.size() || ratio < best - eps) {
        best = ratio;
        enter = j;
      } else if (ratio <= best + eps && a < row[enter]) {
        enter = j;  // prefer the larger pivot among ties
      }
    }
    if (enter == c_.size()) return LpStatus::kInfeasible;
    pivot(leave, enter);
  }
}

void SimplexSolver::set_objective_from_original() {
  const std::size_t cols = nonbasic_.size();
  c_.assign(cols, 0.0);
  z_ = 0.0;
  for (std::size_t j = 0; j < cols; ++j) {
    const std::size_t id = nonbasic_[j];
    if (id < n_) c_[j] = orig_obj_[id];
  }
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const std::size_t id = basic_[r];
    if (id >= n_ || orig_obj_[id] == 0.0) continue;
    const double w = orig_obj_[id];
    z_ += w * b_[r];
    const Vector& row = rows_[r];
    for (std::size_t j = 0; j < cols; ++j) c_[j] -= w * row[j];
  }
}

LpStatus SimplexSolver::phase_one() {
  std::size_t worst = rows_.size();
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (b_[r] < -kFeasTol && (worst == rows_.size() || b_[r] < b_[worst])) worst = r;
  }
  if (worst == rows_.size()) return LpStatus::kOptimal;

  double scale = 1.0;
  for (double b : b_) scale = std::max(scale, std::abs(b));

  // x_B = b + x0 - sum a x_N ; maximize -x0
  for (Vector& row : rows_) row.push_back(-1.0);
  nonbasic_.push_back(kAuxId);
  c_.assign(nonbasic_.size(), 0.0);
  c_.back() = -1.0;
  z_ = 0.0;
  pivot(worst, nonbasic_.size() - 1);
  const LpStatus st = primal();
  if (st == LpStatus::kIterationLimit) return st;
  if (z_ < -kFeasTol * scale) return LpStatus::kInfeasible;

  // drive x0 out of the basis if it stayed at level zero
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (basic_[r] != kAuxId) continue;
    std::size_t best = nonbasic_.size();
    for (std::size_t j = 0; j < nonbasic_.size(); ++j) {
      if (nonbasic_[j] == kAuxId) continue;
      if (best == nonbasic_.size() || std::abs(rows_[r][j]) > std::abs(rows_[r][best])) best = j;
    }
    if (best == nonbasic_.size() || std::abs(rows_[r][best]) < opt_.pivot_tol) {
      // redundant row: it pins x0 at zero and nothing else
      rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
      b_.erase(b_.begin() + static_cast<std::ptrdiff_t>(r));
      basic_.erase(basic_.begin() + static_cast<std::ptrdiff_t>(r));
      for (std::size_t rr = 0; rr < basic_.size(); ++rr) {
        if (basic_[rr] != kAuxId) where_[basic_[rr]] = rr;
      }
    } else {
      pivot(r, best);
    }
    break;
  }
  const auto it = std::find(nonbasic_.begin(), nonbasic_.end(), kAuxId);
  const auto col = static_cast<std::size_t>(it - nonbasic_.begin());
  for (Vector& row : rows_) row.erase(row.begin() + static_cast<std::ptrdiff_t>(col));
  nonbasic_.erase(it);
  for (std::size_t j = col; j < nonbasic_.size(); ++j) where_[nonbasic_[j]] = j;
  set_objective_from_original();
  return LpStatus::kOptimal;
}

LpStatus SimplexSolver::solve() {
  status_ = phase_one();
  if (status_ == LpStatus::kOptimal) status_ = primal();
  solved_ = true;
  return status_;
}

LpStatus SimplexSolver::add_row_and_resolve(const Vector& coeffs, double b) {
  return add_rows_and_resolve({coeffs}, Vector{b});
}

LpStatus SimplexSolver::add_rows_and_resolve(const std::vector<Vector>& coeffs, const Vector& b) {
  if (coeffs.size() != b.size()) throw DimensionError("add_rows: rows and rhs differ in length");
  for (std::size_t i = 0; i < coeffs.size(); ++i) append_row(coeffs[i], b[i]);
  if (!solved_ || status_ != LpStatus::kOptimal) return solve();
  status_ = dual();
  if (status_ == LpStatus::kOptimal) status_ = primal();
  return status_;
}

std::size_t SimplexSolver::drop_slack_rows(std::size_t first, double tol) {
  std::size_t kept = 0;
  const std::size_t before = rows_.size();
  for (std::size_t r = 0; r < before; ++r) {
    const std::size_t id = basic_[r];
    const bool drop = id != kAuxId && id >= n_ + first && b_[r] > tol;
    if (drop) {
      is_basic_[id] = false;
      continue;
    }
    if (kept != r) {
      rows_[kept] = std::move(rows_[r]);
      b_[kept] = b_[r];
      basic_[kept] = id;
    }
    if (id != kAuxId) where_[id] = kept;
    ++kept;
  }
  rows_.resize(kept);
  b_.resize(kept);
  basic_.resize(kept);
  return before - kept;
}

LinearProgramSolution SimplexSolver::solution() const {
  LinearProgramSolution s;
  s.status = status_;
  s.iterations = iterations_;
  s.x.assign(n_, 0.0);
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (basic_[r] < n_) s.x[basic_[r]] = std::max(0.0, b_[r]);
  }
  s.duals.assign(orig_rows_.size(), 0.0);
  for (std::size_t j = 0; j < nonbasic_.size(); ++j) {
    const std::size_t id = nonbasic_[j];
    if (id >= n_ && id != kAuxId) s.duals[id - n_] = -c_[j];
  }
  s.objective = dot(orig_obj_, s.x);
  for (std::size_t r = 0; r < orig_rows_.size(); ++r) {
    const SparseRow& row = orig_rows_[r];
    double lhs = 0.0;
    for (std::size_t k = 0; k < row.index.size(); ++k) lhs += row.value[k] * s.x[row.index[k]];
    s.max_residual = std::max(s.max_residual, lhs - orig_rhs_[r]);
  }
  return s;
}

LinearProgramSolution lp_solve(const LinearProgram& lp, SimplexOptions options) {
  SimplexSolver solver(lp, options);
  solver.solve();
  return solver.solution();
}

}  // namespace smoothed
