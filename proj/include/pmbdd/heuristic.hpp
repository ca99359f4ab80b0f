#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pmbdd/colgen.hpp"
#include "pmbdd/diagram.hpp"
#include "pmbdd/instance.hpp"

namespace pmbdd {

// Iterated local search: earliest-due-date list scheduling start, then
// first-improvement over swaps, reinsertions, inter-machine moves and small
// block moves, with a random ejection restart on stagnation. Deterministic
// for a fixed seed; best-so-far result, so cost never increases with budget.
Schedule initial_solution(const Instance& inst, int budget, std::uint64_t seed);

// One local-search run starting from an existing schedule.
Schedule local_search(const Instance& inst, const Schedule& start, int budget,
                      std::uint64_t seed);

// Decodes the schedule's machine sequences into diagram paths, re-sorting
// each machine canonically (by interval, then by the interval's permutation)
// when the raw sequence is not representable. nullopt when the schedule
// cannot be represented even after the re-sort; the master then starts from
// artificials alone.
std::optional<std::vector<Column>> schedule_to_columns(const Instance& inst,
                                                       const Partition& part,
                                                       const Diagram& d,
                                                       const Schedule& sched);

}  // namespace pmbdd
