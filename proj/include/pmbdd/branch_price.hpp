#pragma once

#include <cstdint>
#include <vector>

#include "pmbdd/colgen.hpp"
#include "pmbdd/diagram.hpp"
#include "pmbdd/instance.hpp"

namespace pmbdd {

// GUB dichotomy over one job's hi edges, ordered by start time. The left
// child zeroes the prefix, the right child zeroes the complement.
struct BranchDecision {
  int job = 0;                             // 1-based
  std::vector<std::int32_t> prefix_edges;  // V', a proper non-empty prefix
  double threshold = 0.0;                  // sum q(e) x_e, for reporting
};

enum class BranchSide { kLeft, kRight };

struct BranchCandidate {
  BranchDecision decision;
  double score = 0.0;  // min(mass(V'), 1 - mass(V'))
};

// Edge-space expansion x_e = sum_p z_e^p lambda_p of a master solution.
std::vector<double> edge_values(const Diagram& d, const std::vector<Column>& pool,
                                const std::vector<int>& active,
                                const std::vector<double>& lambda);

// Start-time reference-row split per job with fractional edge mass, ranked by
// fractionality; empty when the edge solution is integral.
std::vector<BranchCandidate> select_branch_candidates(const Instance& inst,
                                                      const Diagram& d,
                                                      const AliveMask& alive,
                                                      const std::vector<double>& edge_x,
                                                      int max_candidates);

// Clears the hi-edge alive flags dictated by the decision side. Returns false
// when the job keeps no alive edge (child infeasible).
bool apply_branch(const Diagram& d, AliveMask& alive, const BranchDecision& decision,
                  BranchSide side);

struct SolveConfig {
  double time_limit_s = 1e18;
  long long node_limit = 1000000;
  CgConfig cg;
  int heuristic_budget = 2000;
  std::uint64_t heuristic_seed = 1;
  int sb_candidates = 6;   // branching candidates kept
  int sb_probe_iters = 40; // CG iterations per child in the ranking phase
  int sb_patience = 3;     // consecutive non-improving full evaluations
};

struct SolveStats {
  long long nodes = 0;
  long long cg_iterations = 0;
  long long iterations_root = 0;
  double lb_root = 0.0;
  double time_lp_s = 0.0;
  double time_total_s = 0.0;
  long long lb = 0;
  long long ub = 0;
};

struct SolveResult {
  long long opt_cost = 0;
  Schedule schedule;
  bool proven_optimal = false;
  SolveStats stats;
};

// Full strong-branching pick: probe every candidate, then fully evaluate in
// rank order until `patience` consecutive evaluations stop improving.
BranchDecision strong_branch(const Instance& inst, const Diagram& d,
                             const AliveMask& alive, std::vector<Column>& pool,
                             double parent_lb, long long ub,
                             const std::vector<BranchCandidate>& candidates,
                             const SolveConfig& config);

SolveResult solve(const Instance& inst, const SolveConfig& config = {});

}  // namespace pmbdd
