#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "pmbdd/bench.hpp"
#include "support/example_instance.hpp"
#include "support/gen.hpp"

using namespace pmbdd;

TEST_CASE("oracle on the example and the guard") {
  const auto res = brute_force_opt(example_instance());
  CHECK(res.opt_cost == 4);
  CHECK(res.schedule.cost == 4);

  Instance one;
  one.machines = 1;
  one.jobs = {{1, 3, 1, 2}};
  one.horizon = 3;
  CHECK(brute_force_opt(one).opt_cost == 4);

  Instance big;
  big.machines = 2;
  for (int i = 1; i <= 11; ++i) big.jobs.push_back({i, 1, 0, 1});
  big.horizon = 6;
  CHECK_THROWS_AS(brute_force_opt(big), InstanceError);
}

TEST_CASE("single machine oracle equals the plain permutation scan") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    auto inst = random_small_instance(seed, 6, 9, 1, 1);
    REQUIRE(inst.machines == 1);
    long long best = std::numeric_limits<long long>::max();
    std::vector<int> perm(static_cast<std::size_t>(inst.n()));
    for (int i = 0; i < inst.n(); ++i) perm[static_cast<std::size_t>(i)] = i + 1;
    do {
      best = std::min(best, schedule_cost(inst, {perm}));
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(brute_force_opt(inst).opt_cost == best);
  }
}

TEST_CASE("performance profiles") {
  const std::vector<std::string> methods = {"a", "b"};
  const double inf = std::numeric_limits<double>::infinity();

  // Method a strictly fastest everywhere.
  auto table = performance_profile({{1.0, 2.0}, {2.0, 5.0}, {0.5, 0.6}}, methods,
                                   {1.0, 2.0, 10.0});
  CHECK(table.rho[0][0] == doctest::Approx(1.0));
  CHECK(table.rho[0][1] < 1.0);

  // Identical runtime vectors give identical profiles.
  table = performance_profile({{3.0, 3.0}, {1.0, 1.0}}, methods, {1.0, 4.0});
  CHECK(table.rho[0][0] == table.rho[0][1]);
  CHECK(table.rho[0][0] == doctest::Approx(1.0));

  // Hand-built 3-instance example: ratios a = (1, 2, inf), b = (2, 1, 1).
  table = performance_profile({{1.0, 2.0}, {4.0, 2.0}, {inf, 7.0}}, methods,
                              {1.0, 2.0, 3.0});
  CHECK(table.rho[0][0] == doctest::Approx(1.0 / 3));
  CHECK(table.rho[0][1] == doctest::Approx(2.0 / 3));
  CHECK(table.rho[1][0] == doctest::Approx(2.0 / 3));
  CHECK(table.rho[1][1] == doctest::Approx(1.0));
  CHECK(table.rho[2][0] == doctest::Approx(2.0 / 3));  // unsolved never enters

  // Monotone in tau, bounded by one, and the winners cover the set.
  for (std::size_t t = 1; t < table.taus.size(); ++t)
    for (std::size_t s = 0; s < methods.size(); ++s) {
      CHECK(table.rho[t][s] >= table.rho[t - 1][s]);
      CHECK(table.rho[t][s] <= 1.0);
    }
  CHECK(table.rho[0][0] + table.rho[0][1] >= 1.0);

  CHECK_THROWS_AS(performance_profile({}, methods, {1.0}), InstanceError);
}

TEST_CASE("csv helpers") {
  CHECK(result_csv_header() ==
        "instance_id,n,m,ub,lb,nodes,cg_iters,time_lp_s,time_total_s,lb_root,iters_root");
  ResultRow row;
  row.instance_id = "x";
  row.n = 4;
  row.m = 2;
  row.ub = 4;
  row.lb = 4;
  const auto line = result_csv_line(row);
  CHECK(line.substr(0, 10) == "x,4,2,4,4,");
}

TEST_CASE("suite runs are idempotent") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "pmbdd_suite_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    std::ofstream out(dir / ("i" + std::to_string(seed) + ".inst"));
    out << write_instance(random_small_instance(seed, 5, 6, 2, 2));
  }
  const auto csv = (dir / "results.csv").string();
  SolveConfig config;
  CHECK(run_suite(dir.string(), csv, config) == 3);
  std::ifstream in(csv);
  std::string first((std::istreambuf_iterator<char>(in)), {});
  CHECK(run_suite(dir.string(), csv, config) == 0);
  std::ifstream in2(csv);
  std::string second((std::istreambuf_iterator<char>(in2)), {});
  CHECK(first == second);
  fs::remove_all(dir);
}
