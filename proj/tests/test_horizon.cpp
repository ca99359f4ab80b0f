#include <doctest.h>

#include "pmbdd/horizon.hpp"
#include "support/example_instance.hpp"
#include "support/gen.hpp"

using namespace pmbdd;

TEST_CASE("base partition endpoints") {
  const auto inst = example_instance();
  CHECK(base_partition(inst).endpoints == std::vector<int>{0, 4, 6, 8, 11});

  Instance all_t;
  all_t.machines = 1;
  all_t.jobs = {{1, 3, 7, 1}, {2, 4, 7, 1}};
  all_t.horizon = 7;
  CHECK(base_partition(all_t).endpoints == std::vector<int>{0, 7});

  Instance dup;
  dup.machines = 1;
  dup.jobs = {{1, 3, 3, 1}, {2, 3, 3, 1}, {3, 3, 5, 1}};
  dup.horizon = 9;
  CHECK(base_partition(dup).endpoints == std::vector<int>{0, 3, 5, 9});
}

TEST_CASE("interval permutations of the worked example") {
  const auto inst = example_instance();
  CHECK(interval_permutation(inst, 8, 11) == std::vector<int>{4, 2, 3, 1});
  CHECK(interval_permutation(inst, 0, 4) == std::vector<int>{2, 3, 4, 1});
  CHECK(interval_permutation(inst, 4, 6) == std::vector<int>{2, 3, 4, 1});
  CHECK(interval_permutation(inst, 6, 8) == std::vector<int>{2, 3, 4, 1});

  // Due date strictly inside the interval.
  CHECK_THROWS_AS(interval_permutation(inst, 0, 5), InstanceError);
}

TEST_CASE("identical jobs tie-break by id") {
  Instance inst;
  inst.machines = 1;
  inst.jobs = {{1, 3, 6, 2}, {2, 3, 6, 2}};
  inst.horizon = 6;
  CHECK(interval_permutation(inst, 0, 6) == std::vector<int>{1, 2});
}

TEST_CASE("permutation is a deterministic total order") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const auto inst = random_small_instance(seed, 7, 9);
    const auto part = refine_partition(inst);
    for (int r = 0; r < part.order(); ++r) {
      auto perm = part.permutations[static_cast<std::size_t>(r)];
      CHECK(perm.size() == static_cast<std::size_t>(inst.n()));
      std::sort(perm.begin(), perm.end());
      for (int i = 0; i < inst.n(); ++i) CHECK(perm[static_cast<std::size_t>(i)] == i + 1);
      // Re-running gives the same order.
      CHECK(part.permutations[static_cast<std::size_t>(r)] ==
            interval_permutation(inst, part.endpoints[static_cast<std::size_t>(r)],
                                 part.endpoints[static_cast<std::size_t>(r) + 1]));
    }
  }
}

TEST_CASE("worked example passes the appropriateness check unrefined") {
  const auto inst = example_instance();
  const auto part = refine_partition(inst);
  CHECK(part.endpoints == std::vector<int>{0, 4, 6, 8, 11});
  REQUIRE(part.permutations.size() == 4);
  CHECK(part.permutations[0] == std::vector<int>{2, 3, 4, 1});
  CHECK(part.permutations[1] == std::vector<int>{2, 3, 4, 1});
  CHECK(part.permutations[2] == std::vector<int>{2, 3, 4, 1});
  CHECK(part.permutations[3] == std::vector<int>{4, 2, 3, 1});
  CHECK(check_appropriate(inst, part).empty());
}

TEST_CASE("single-interval partition can violate both conditions") {
  // Two short jobs, generous interval, early due date for the first: the
  // length condition fails (p_j < T) and the interchange condition fails
  // (e_0 = 0 < d_i + ceil(w_j p_i / w_i) - p_i).
  Instance inst;
  inst.machines = 1;
  inst.jobs = {{1, 3, 10, 1}, {2, 4, 10, 1}};
  inst.horizon = 10;
  Partition part;
  part.endpoints = {0, 10};
  part.permutations = {interval_permutation(inst, 0, 10)};
  REQUIRE(part.permutations[0] == std::vector<int>{2, 1});
  const auto viol = check_appropriate(inst, part);
  REQUIRE(viol.size() == 1);
  CHECK(viol[0].interval == 0);
  CHECK(viol[0].first_job == 2);
  CHECK(viol[0].second_job == 1);
}

TEST_CASE("single job has no pairs") {
  Instance inst;
  inst.machines = 1;
  inst.jobs = {{1, 5, 2, 3}};
  inst.horizon = 5;
  const auto part = refine_partition(inst);
  CHECK(check_appropriate(inst, part).empty());
}

TEST_CASE("unit processing times are always appropriate") {
  Instance inst;
  inst.machines = 2;
  inst.jobs = {{1, 1, 2, 3}, {2, 1, 0, 1}, {3, 1, 1, 5}, {4, 1, 3, 2}};
  inst.horizon = horizon_length(inst.jobs, 2);
  const auto part = refine_partition(inst);
  CHECK(check_appropriate(inst, part).empty());
}

TEST_CASE("refinement always reaches an appropriate partition") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto inst = random_small_instance(seed, 6, 9);
    const auto part = refine_partition(inst);
    CHECK(check_appropriate(inst, part).empty());
    // Endpoints strictly increasing, bracketed by 0 and T.
    CHECK(part.endpoints.front() == 0);
    CHECK(part.endpoints.back() == inst.horizon);
    for (std::size_t i = 1; i < part.endpoints.size(); ++i)
      CHECK(part.endpoints[i - 1] < part.endpoints[i]);
    CHECK(part.order() <= inst.horizon);
    // Every due date strictly inside the horizon stays an endpoint.
    for (const auto& j : inst.jobs) {
      if (j.d > 0 && j.d < inst.horizon) {
        CHECK(std::find(part.endpoints.begin(), part.endpoints.end(), j.d) !=
              part.endpoints.end());
      }
    }
  }
}

TEST_CASE("partition dump format") {
  const auto inst = example_instance();
  const auto part = refine_partition(inst);
  const auto text = dump_partition(part);
  CHECK(text.find("1: (0,4] sigma=(2,3,4,1)") != std::string::npos);
  CHECK(text.find("4: (8,11] sigma=(4,2,3,1)") != std::string::npos);
}
