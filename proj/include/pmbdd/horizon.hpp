#pragma once

#include <string>
#include <vector>

#include "pmbdd/instance.hpp"

namespace pmbdd {

// Interval decomposition of (0, T] with one job permutation per interval.
// Interval r covers (endpoints[r], endpoints[r+1]].
struct Partition {
  std::vector<int> endpoints;                  // e_0 = 0 < ... < e_q = T
  std::vector<std::vector<int>> permutations;  // per interval, 1-based job ids

  int order() const { return static_cast<int>(endpoints.size()) - 1; }
};

// A sigma-ordered pair (first before second) for which neither safe-ordering
// condition holds: the second job fits after the first in the interval and
// the interchange bound fails.
struct PairViolation {
  int interval;    // 0-based interval index
  int first_job;   // 1-based
  int second_job;  // 1-based
};

// Endpoints only: 0, the distinct due dates strictly inside (0, T), and T.
Partition base_partition(const Instance& inst);

// Canonical order of all jobs for interval (e_lo, e_hi]:
//   long jobs (p >= length) first, then short late jobs (d <= e_lo) by WSPT,
//   then short on-time jobs by LPT. Long jobs start from LPT order; the late
//   ones among them are re-ranked by WSPT across the positions they hold.
// WSPT ties broken by larger p, every remaining tie by job id.
// Throws if some due date falls strictly inside the interval.
std::vector<int> interval_permutation(const Instance& inst, int e_lo, int e_hi);

// Empty result means the partition is appropriate. A pair is skipped when the
// two jobs cannot both complete in the interval in either order.
std::vector<PairViolation> check_appropriate(const Instance& inst, const Partition& part);

// Base partition split until check_appropriate is empty.
Partition refine_partition(const Instance& inst);

std::string dump_partition(const Partition& part);

}  // namespace pmbdd
