#include <cmath>

#include "doctest.h"
#include "smoothed/rng.hpp"
#include "smoothed/simplex.hpp"
#include "vertex_oracle.hpp"

using namespace smoothed;
using doctest::Approx;

namespace {

// Beale's example: Dantzig pricing with lowest-index ties cycles on it.
LinearProgram beale() {
  LinearProgram lp(4);
  lp.objective = {0.75, -150.0, 0.02, -6.0};
  lp.add_row({0.25, -60.0, -0.04, 9.0}, 0.0);
  lp.add_row({0.5, -90.0, -0.02, 3.0}, 0.0);
  lp.add_row({0.0, 0.0, 1.0, 0.0}, 1.0);
  return lp;
}

void check_certificate(const LinearProgram& lp, const LinearProgramSolution& s) {
  REQUIRE(s.status == LpStatus::kOptimal);
  CHECK(s.max_residual <= 1e-7);
  double by = 0.0;
  for (std::size_t r = 0; r < lp.rows.size(); ++r) {
    CHECK(s.duals[r] >= -1e-9);
    by += s.duals[r] * lp.rhs[r];
  }
  CHECK(by == Approx(s.objective).epsilon(1e-8));
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    double col = 0.0;
    for (std::size_t r = 0; r < lp.rows.size(); ++r) col += s.duals[r] * lp.rows[r][j];
    CHECK(col >= lp.objective[j] - 1e-8);
  }
}

}  // namespace

TEST_SUITE("simplex") {

TEST_CASE("single bound") {
  LinearProgram lp(1);
  lp.objective = {1.0};
  lp.add_row({1.0}, 3.0);
  const auto s = lp_solve(lp);
  REQUIRE(s.status == LpStatus::kOptimal);
  CHECK(s.objective == Approx(3.0));
  CHECK(s.x[0] == Approx(3.0));
}

TEST_CASE("Beale's cycling example terminates under Bland's rule") {
  const LinearProgram lp = beale();
  for (PivotRule rule : {PivotRule::kBland, PivotRule::kDantzigThenBland}) {
    SimplexOptions opt;
    opt.rule = rule;
    const auto s = lp_solve(lp, opt);
    REQUIRE(s.status == LpStatus::kOptimal);
    CHECK(s.objective == Approx(0.05));
    check_certificate(lp, s);
  }
}

TEST_CASE("transportation problem") {
  // supplies 20, 30; demands 10, 25, 15; minimize cost, written as max of -cost
  const double cost[2][3] = {{8, 6, 10}, {9, 12, 13}};
  LinearProgram lp(6);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 3; ++j) lp.objective[i * 3 + j] = -cost[i][j];
  }
  lp.add_row({1, 1, 1, 0, 0, 0}, 20);
  lp.add_row({0, 0, 0, 1, 1, 1}, 30);
  const double demand[3] = {10, 25, 15};
  for (int j = 0; j < 3; ++j) {
    Vector row(6, 0.0);
    row[j] = row[3 + j] = -1.0;
    lp.add_row(row, -demand[j]);  // shipped >= demand
  }
  const auto s = lp_solve(lp);
  check_certificate(lp, s);
  // ship 20 of item 2 from source 1, the rest from source 2
  CHECK(-s.objective == Approx(20 * 6 + 10 * 9 + 5 * 12 + 15 * 13));
}

TEST_CASE("infeasible and unbounded programs are reported") {
  LinearProgram bad(1);
  bad.objective = {1.0};
  bad.add_row({1.0}, 1.0);
  bad.add_row({-1.0}, -2.0);
  CHECK(lp_solve(bad).status == LpStatus::kInfeasible);

  LinearProgram open(2);
  open.objective = {1.0, 0.0};
  open.add_row({-1.0, 1.0}, 1.0);
  CHECK(lp_solve(open).status == LpStatus::kUnbounded);
}

TEST_CASE("random programs agree with vertex enumeration") {
  Rng rng(51);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 2 + rng.below(2);
    const std::size_t m = 2 + rng.below(4);
    LinearProgram lp(n);
    oracle::Mat a;
    std::vector<double> b;
    for (double& c : lp.objective) c = rng.uniform(-1.0, 2.0);
    for (std::size_t r = 0; r < m; ++r) {
      Vector row(n);
      for (double& x : row) x = rng.uniform(-1.0, 2.0);
      const double rhs = rng.uniform(-0.5, 3.0);
      lp.add_row(row, rhs);
      a.push_back(row);
      b.push_back(rhs);
    }
    for (std::size_t j = 0; j < n; ++j) {
      Vector row(n, 0.0);
      row[j] = 1.0;
      lp.add_row(row, 5.0);
      a.push_back(row);
      b.push_back(5.0);
      row[j] = -1.0;
      a.push_back(row);
      b.push_back(0.0);
    }
    const auto expected = oracle::vertex_max(a, b, lp.objective);
    for (PivotRule rule : {PivotRule::kBland, PivotRule::kDantzigThenBland}) {
      SimplexOptions opt;
      opt.rule = rule;
      const auto s = lp_solve(lp, opt);
      if (!expected) {
        REQUIRE(s.status == LpStatus::kInfeasible);
        continue;
      }
      REQUIRE(s.status == LpStatus::kOptimal);
      REQUIRE(s.objective == Approx(*expected).epsilon(1e-7));
      check_certificate(lp, s);
    }
  }
}

TEST_CASE("rows added after a solve are restored by the dual simplex") {
  Rng rng(52);
  for (int t = 0; t < 100; ++t) {
    LinearProgram lp(3);
    for (double& c : lp.objective) c = rng.uniform(0.1, 1.0);
    for (std::size_t j = 0; j < 3; ++j) {
      Vector row(3, 0.0);
      row[j] = 1.0;
      lp.add_row(row, rng.uniform(1.0, 4.0));
    }
    SimplexSolver solver(lp);
    REQUIRE(solver.solve() == LpStatus::kOptimal);
    LinearProgram full = lp;
    std::vector<Vector> extra;
    Vector rhs;
    for (int k = 0; k < 3; ++k) {
      Vector row(3);
      for (double& x : row) x = rng.uniform(0.0, 1.0);
      const double b = rng.uniform(0.5, 2.0);
      extra.push_back(row);
      rhs.push_back(b);
      full.add_row(row, b);
    }
    REQUIRE(solver.add_rows_and_resolve(extra, rhs) == LpStatus::kOptimal);
    const auto incremental = solver.solution();
    const auto fresh = lp_solve(full);
    CHECK(incremental.objective == Approx(fresh.objective).epsilon(1e-9));
    CHECK(solver.tableau_objective() == Approx(incremental.objective).epsilon(1e-9));
    check_certificate(full, incremental);

    // dropping rows with slack keeps the optimum
    const std::size_t before = solver.num_rows();
    const std::size_t dropped = solver.drop_slack_rows(3, 1e-9);
    CHECK(solver.num_rows() == before - dropped);
    CHECK(solver.solution().objective == Approx(incremental.objective).epsilon(1e-12));
  }
}

TEST_CASE("degenerate start with negative right-hand sides") {
  LinearProgram lp(2);
  lp.objective = {-1.0, -1.0};
  lp.add_row({-1.0, -2.0}, -4.0);
  lp.add_row({-3.0, -1.0}, -6.0);
  lp.add_row({1.0, 1.0}, 10.0);
  const auto s = lp_solve(lp);
  check_certificate(lp, s);
  CHECK(-s.objective == Approx(2.8));  // x = (1.6, 1.2)
}

}  // TEST_SUITE
