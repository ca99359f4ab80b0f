#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pmbdd/diagram.hpp"
#include "pmbdd/instance.hpp"
#include "pmbdd/lp.hpp"

namespace pmbdd {

// One master column: a root->ONE path identified by the nodes where the hi
// edge is taken (ascending ids determine the full path).
struct Column {
  std::vector<std::int32_t> hi_nodes;
  long long cost = 0;
  std::vector<std::int16_t> job_counts;  // per job, hi-edge multiplicity

  bool alive_under(const AliveMask& alive) const {
    for (auto v : hi_nodes)
      if (!alive[static_cast<std::size_t>(v)]) return false;
    return true;
  }
  bool operator==(const Column& o) const { return hi_nodes == o.hi_nodes; }
};

Column column_from_path(const Diagram& d, const std::vector<std::int32_t>& hi_nodes);

struct DualVector {
  std::vector<double> job;  // indexed by job id - 1
  double convexity = 0.0;   // machine-count row
};

enum class PricingMode { kRepeats, kNoConsecutive };

// Label bucket with two entries: the best partial path and the best one whose
// adjacent scheduled job differs from the first's. Values are raw sums of
// hi-edge reduced costs; the convexity dual is applied by the callers.
struct Label {
  double value = std::numeric_limits<double>::infinity();
  std::int32_t adj_job = 0;  // 1-based; 0 = no job scheduled on the partial path
  std::int32_t next = kTerminalOne;  // successor node (backward) / unused forward
  std::int8_t next_slot = 0;
  bool step_hi = false;
};

struct Bucket {
  Label slot[2];

  void offer(const Label& cand) {
    if (cand.value < slot[0].value) {
      if (cand.adj_job == slot[0].adj_job) {
        slot[0] = cand;
      } else {
        slot[1] = slot[0];
        slot[0] = cand;
      }
    } else if (cand.adj_job != slot[0].adj_job && cand.value < slot[1].value) {
      slot[1] = cand;
    }
  }
  // Best entry whose adjacent job differs from `job` (0 disables the filter).
  const Label* best_avoiding(std::int32_t job) const {
    if (job == 0 || slot[0].adj_job != job) return &slot[0];
    return &slot[1];
  }
};

struct PricingResult {
  std::optional<Column> best;
  double min_reduced_cost = 0.0;   // includes the -pi_0 term
  std::vector<Bucket> labels;      // per node, suffix (backward) values
};

// Backward labeling: labels hold the cheapest node->ONE suffixes; adj_job is
// the first scheduled job of the suffix. kRepeats prices a plain shortest
// path, kNoConsecutive forbids equal jobs on consecutive hi edges.
PricingResult price_backward(const Diagram& d, const AliveMask& alive,
                             const DualVector& duals, PricingMode mode);

struct ForwardLabels {
  std::vector<Bucket> at;  // per node, root->node prefix values
  Bucket terminal;         // completed paths
};

ForwardLabels price_forward(const Diagram& d, const AliveMask& alive,
                            const DualVector& duals,
                            PricingMode mode = PricingMode::kNoConsecutive);

// Master over the alive columns of `pool` (plus internal artificials and the
// empty path): assignment row per job, convexity row = m.
struct MasterResult {
  double value = 0.0;
  DualVector duals;
  std::vector<double> lambda;      // aligned with `active`
  std::vector<int> active;         // indexes into the pool; -1 = empty path
  bool artificial_basic = false;   // some artificial still carries weight
};

MasterResult solve_master(const Instance& inst, const std::vector<Column>& pool,
                          const AliveMask& alive);

DualVector smooth_duals(const DualVector& best, const DualVector& rmp, double alpha);

// rmp_value + m * min(0, min_reduced_cost); exact pricing at the RMP duals.
double lagrangian_lb(double rmp_value, double min_reduced_cost, int machines);
long long integer_lb(double fractional_lb);

// Kills alive hi edges whose best through-path cannot beat the incumbent:
// lb + (m-1)*min_rc + through(e) >= ub. Labels must come from the same duals
// as lb and min_rc. Returns the number of edges removed.
int fix_edges(const Diagram& d, AliveMask& alive, const ForwardLabels& fwd,
              const PricingResult& bwd, double lb, long long ub,
              double min_reduced_cost, const DualVector& duals, PricingMode mode);

struct CgConfig {
  PricingMode mode = PricingMode::kNoConsecutive;
  double alpha = 0.8;          // Wentges smoothing weight on the stability center
  int fix_period = 100;        // fixing cadence in iterations (0 = never)
  int max_iters = 5000;
  double negative_tol = 1e-6;
  bool fix_at_convergence = true;
  bool verbose = false;        // per-iteration trace on stderr
};

struct CgState {
  double rmp_value = 0.0;
  DualVector duals;               // last exact RMP duals
  DualVector best_duals;          // best Lagrangian bound seen
  std::vector<double> lambda;
  std::vector<int> active;
  double lb = 0.0;                // fractional lower bound
  long long lb_int = 0;
  long long ub = 0;
  int iterations = 0;
  bool converged = false;
  int edges_fixed = 0;
};

// Column generation over the alive diagram. Appends generated columns to
// `pool`; `alive` shrinks when fixing triggers.
CgState run_colgen(const Diagram& d, const Instance& inst, AliveMask& alive,
                   std::vector<Column>& pool, long long ub, const CgConfig& config);

}  // namespace pmbdd
