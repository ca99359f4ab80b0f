#include <doctest.h>

#include <cmath>

#include "pmbdd/bench.hpp"
#include "pmbdd/formulations.hpp"
#include "pmbdd/horizon.hpp"
#include "support/example_instance.hpp"
#include "support/gen.hpp"

using namespace pmbdd;

namespace {

double row_residual(const LpProblem& p, const std::vector<double>& x) {
  double worst = 0.0;
  for (const auto& row : p.rows) {
    double lhs = 0.0;
    for (const auto& [j, v] : row.coeffs) lhs += v * x[static_cast<std::size_t>(j)];
    if (row.sense == RowSense::kEqual)
      worst = std::max(worst, std::abs(lhs - row.rhs));
    else
      worst = std::max(worst, lhs - row.rhs);
  }
  return worst;
}

}  // namespace

TEST_CASE("cost table identity") {
  const auto inst = example_instance();
  const CostTable costs(inst);
  for (int j = 1; j <= inst.n(); ++j) {
    for (int t = 0; t + inst.job(j).p <= inst.horizon; ++t) {
      CHECK(costs.atif(j, t) == costs.tif(j, t + 1));
      CHECK(costs.atif(j, t) >= 0);
      if (t + inst.job(j).p <= inst.job(j).d) CHECK(costs.atif(j, t) == 0);
    }
  }
  CHECK(costs.tif(3, 7) == 4);  // job 3 starting period 7 finishes at 10
}

TEST_CASE("example TIF: known fractional optimum of value 2") {
  const auto inst = example_instance();
  const auto tif = build_tif(inst);
  const auto sol = solve_lp(tif.lp);
  REQUIRE(sol.status == LpStatus::kOptimal);
  CHECK(sol.objective == doctest::Approx(2.0));

  // The reference point: y_11 = y_13 = y_31 = y_37 = 0.5, y_21 = y_45 = 1.
  std::vector<double> y(static_cast<std::size_t>(tif.lp.num_vars()), 0.0);
  y[static_cast<std::size_t>(tif.var_of(1, 1))] = 0.5;
  y[static_cast<std::size_t>(tif.var_of(1, 3))] = 0.5;
  y[static_cast<std::size_t>(tif.var_of(3, 1))] = 0.5;
  y[static_cast<std::size_t>(tif.var_of(3, 7))] = 0.5;
  y[static_cast<std::size_t>(tif.var_of(2, 1))] = 1.0;
  y[static_cast<std::size_t>(tif.var_of(4, 5))] = 1.0;
  CHECK(row_residual(tif.lp, y) <= 1e-9);
  double obj = 0.0;
  for (int j = 0; j < tif.lp.num_vars(); ++j)
    obj += tif.lp.objective[static_cast<std::size_t>(j)] * y[static_cast<std::size_t>(j)];
  CHECK(obj == doctest::Approx(2.0));
}

TEST_CASE("single job TIF is free when the due date allows") {
  Instance inst;
  inst.machines = 1;
  inst.jobs = {{1, 4, 6, 3}};
  inst.horizon = 4;
  const auto sol = solve_lp(build_tif(inst).lp);
  REQUIRE(sol.status == LpStatus::kOptimal);
  CHECK(sol.objective == doctest::Approx(0.0));
}

TEST_CASE("example ATIF: the drawn integral solution is feasible") {
  const auto inst = example_instance();
  const auto atif = build_atif(inst);
  std::vector<double> x(static_cast<std::size_t>(atif.lp.num_vars()), 0.0);
  const auto set = [&](int i, int j, int t, double v) {
    const int var = atif.var_of(i, j, t);
    REQUIRE(var >= 0);
    x[static_cast<std::size_t>(var)] = v;
  };
  set(0, 2, 0, 1.0);
  set(0, 4, 0, 1.0);
  set(4, 3, 4, 1.0);
  set(2, 1, 6, 1.0);
  set(1, 0, 8, 1.0);
  set(3, 0, 8, 1.0);
  set(0, 0, 9, 2.0);
  set(0, 0, 10, 2.0);
  set(0, 0, 11, 2.0);
  CHECK(row_residual(atif.lp, x) <= 1e-9);
}

TEST_CASE("example BDDF: integral LP optimum of 4") {
  const auto inst = example_instance();
  const auto d = build_diagram(inst, refine_partition(inst));
  const auto sol = solve_lp(build_bddf(inst, d).lp);
  REQUIRE(sol.status == LpStatus::kOptimal);
  CHECK(sol.objective == doctest::Approx(4.0));
}

TEST_CASE("bound sandwich on random instances") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto inst = random_small_instance(seed, 6, 8);
    const auto opt = static_cast<double>(brute_force_opt(inst).opt_cost);
    const auto lp_tif = solve_lp(build_tif(inst).lp);
    const auto lp_atif = solve_lp(build_atif(inst).lp);
    const auto d = build_diagram(inst, refine_partition(inst));
    const auto lp_bddf = solve_lp(build_bddf(inst, d).lp);
    REQUIRE(lp_tif.status == LpStatus::kOptimal);
    REQUIRE(lp_atif.status == LpStatus::kOptimal);
    REQUIRE(lp_bddf.status == LpStatus::kOptimal);
    CHECK(lp_bddf.objective >= lp_tif.objective - 1e-6);   // flow dominates TIF
    CHECK(lp_atif.objective >= lp_tif.objective - 1e-6);
    CHECK(lp_tif.objective <= opt + 1e-6);
    CHECK(lp_bddf.objective <= opt + 1e-6);
    CHECK(lp_atif.objective <= opt + 1e-6);
  }
}

TEST_CASE("ATIF solutions project onto TIF solutions") {
  for (std::uint64_t seed = 40; seed <= 52; ++seed) {
    const auto inst = random_small_instance(seed, 5, 7);
    const auto atif = build_atif(inst);
    const auto sol = solve_lp(atif.lp);
    REQUIRE(sol.status == LpStatus::kOptimal);
    const auto tif = build_tif(inst);
    std::vector<double> y(static_cast<std::size_t>(tif.lp.num_vars()), 0.0);
    for (int j = 1; j <= inst.n(); ++j) {
      for (int t = 1; t <= inst.horizon - inst.job(j).p + 1; ++t) {
        double mass = 0.0;
        for (int i = 0; i <= inst.n(); ++i) {
          if (i == j) continue;
          const int var = atif.var_of(i, j, t - 1);
          if (var >= 0) mass += sol.primal[static_cast<std::size_t>(var)];
        }
        y[static_cast<std::size_t>(tif.var_of(j, t))] = mass;
      }
    }
    CHECK(row_residual(tif.lp, y) <= 1e-7);
    double obj = 0.0;
    for (int v = 0; v < tif.lp.num_vars(); ++v)
      obj += tif.lp.objective[static_cast<std::size_t>(v)] * y[static_cast<std::size_t>(v)];
    CHECK(obj == doctest::Approx(sol.objective).epsilon(1e-7).scale(1.0 + std::abs(obj)));
  }
}

TEST_CASE("BDDF projection keeps feasibility and value") {
  const auto inst = example_instance();
  const auto d = build_diagram(inst, refine_partition(inst));
  const auto bddf = build_bddf(inst, d);
  const auto tif = build_tif(inst);

  const auto sol = solve_lp(bddf.lp);
  REQUIRE(sol.status == LpStatus::kOptimal);
  const auto y = project_bddf_to_tif(d, bddf, sol.primal, tif);
  CHECK(row_residual(tif.lp, y) <= 1e-7);
  double obj = 0.0;
  for (int v = 0; v < tif.lp.num_vars(); ++v)
    obj += tif.lp.objective[static_cast<std::size_t>(v)] * y[static_cast<std::size_t>(v)];
  CHECK(obj == doctest::Approx(4.0));

  for (std::uint64_t seed = 60; seed <= 110; ++seed) {
    const auto rnd = random_small_instance(seed, 6, 8);
    const auto rd = build_diagram(rnd, refine_partition(rnd));
    const auto rb = build_bddf(rnd, rd);
    const auto rs = solve_lp(rb.lp);
    REQUIRE(rs.status == LpStatus::kOptimal);
    const auto rt = build_tif(rnd);
    const auto ry = project_bddf_to_tif(rd, rb, rs.primal, rt);
    CHECK(row_residual(rt.lp, ry) <= 1e-7);
    double robj = 0.0;
    for (int v = 0; v < rt.lp.num_vars(); ++v)
      robj += rt.lp.objective[static_cast<std::size_t>(v)] * ry[static_cast<std::size_t>(v)];
    CHECK(robj == doctest::Approx(rs.objective).epsilon(1e-7).scale(1.0 + std::abs(robj)));
    if (rs.objective == doctest::Approx(0.0)) {
      for (double v : ry) CHECK(v >= -1e-9);  // zero-cost point stays zero-cost
    }
  }
}

TEST_CASE("one machine per job with a single interval") {
  Instance inst;
  inst.machines = 3;
  inst.jobs = {{1, 2, 0, 3}, {2, 5, 0, 1}, {3, 3, 0, 2}};
  inst.horizon = horizon_length(inst.jobs, 3);
  const auto d = build_diagram(inst, refine_partition(inst));
  const auto sol = solve_lp(build_bddf(inst, d).lp);
  REQUIRE(sol.status == LpStatus::kOptimal);
  long long expect = 0;
  for (const auto& j : inst.jobs) expect += static_cast<long long>(j.w) * j.p;
  CHECK(sol.objective == doctest::Approx(static_cast<double>(expect)));
}
