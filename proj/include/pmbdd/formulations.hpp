#pragma once

#include <vector>

#include "pmbdd/diagram.hpp"
#include "pmbdd/instance.hpp"
#include "pmbdd/lp.hpp"

namespace pmbdd {

// Start costs. TIF indexes by start period (period t covers [t-1, t)), the
// arc-time-indexed variant by start time, so atif(j, t) == tif(j, t + 1).
struct CostTable {
  explicit CostTable(const Instance& inst) : inst_(&inst) {}
  int tif(int job_id, int period) const {
    const Job& j = inst_->job(job_id);
    return j.w * std::max(0, (period - 1) + j.p - j.d);
  }
  int atif(int job_id, int time) const { return tif(job_id, time + 1); }

 private:
  const Instance* inst_;
};

// Time-indexed formulation. Variables y_{j,t} for start periods
// t in 1..T-p_j+1; assignment rows first (one per job), capacity rows after.
struct TifModel {
  LpProblem lp;
  std::vector<std::vector<int>> var;  // var[j-1][t-1] -> lp variable

  int var_of(int job_id, int period) const {
    return var[static_cast<std::size_t>(job_id - 1)][static_cast<std::size_t>(period - 1)];
  }
};
TifModel build_tif(const Instance& inst);

// Arc-time-indexed formulation with dummy job 0 (p_0 = 0) and idle chain.
struct AtifModel {
  LpProblem lp;
  int n = 0;
  int horizon = 0;
  std::vector<int> var;  // dense (i, j, t) -> lp variable or -1

  int var_of(int i, int j, int t) const {
    const int nn = n + 1;
    return var[static_cast<std::size_t>((i * nn + j) * (horizon + 1) + t)];
  }
};
AtifModel build_atif(const Instance& inst);

// Flow formulation over the diagram; one variable per alive hi edge and one
// per lo edge.
struct BddfModel {
  LpProblem lp;
  std::vector<int> hi_var;  // -1 for dead edges
  std::vector<int> lo_var;
};
BddfModel build_bddf(const Instance& inst, const Diagram& d);
BddfModel build_bddf(const Instance& inst, const Diagram& d, const AliveMask& alive);

// Maps a feasible point of the flow LP onto the time-indexed variable space;
// the image is TIF-feasible with the same objective value.
std::vector<double> project_bddf_to_tif(const Diagram& d, const BddfModel& bddf,
                                        const std::vector<double>& bddf_primal,
                                        const TifModel& tif);

}  // namespace pmbdd
