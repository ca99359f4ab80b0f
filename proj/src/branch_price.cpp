#include "pmbdd/branch_price.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>

#include "pmbdd/heuristic.hpp"
#include "pmbdd/horizon.hpp"

namespace pmbdd {

namespace {

constexpr double kIntTol = 1e-6;
constexpr long long kHugeUb = std::numeric_limits<long long>::max() / 4;

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

}  // namespace

std::vector<double> edge_values(const Diagram& d, const std::vector<Column>& pool,
                                const std::vector<int>& active,
                                const std::vector<double>& lambda) {
  std::vector<double> x(static_cast<std::size_t>(d.size()), 0.0);
  for (std::size_t k = 0; k < active.size(); ++k) {
    if (active[k] < 0 || lambda[k] <= 0.0) continue;
    for (auto v : pool[static_cast<std::size_t>(active[k])].hi_nodes)
      x[static_cast<std::size_t>(v)] += lambda[k];
  }
  return x;
}

std::vector<BranchCandidate> select_branch_candidates(const Instance& inst,
                                                      const Diagram& d,
                                                      const AliveMask& alive,
                                                      const std::vector<double>& edge_x,
                                                      int max_candidates) {
  std::vector<BranchCandidate> out;
  for (int job = 1; job <= inst.n(); ++job) {
    std::vector<std::int32_t> edges;
    for (std::int32_t v = 0; v < d.size(); ++v)
      if (alive[static_cast<std::size_t>(v)] && d.job(v) == job) edges.push_back(v);
    std::sort(edges.begin(), edges.end(), [&](std::int32_t a, std::int32_t b) {
      const int sa = d.nodes()[static_cast<std::size_t>(a)].start;
      const int sb = d.nodes()[static_cast<std::size_t>(b)].start;
      return sa != sb ? sa < sb : a < b;
    });
    double total = 0.0, threshold = 0.0;
    for (auto v : edges) {
      total += edge_x[static_cast<std::size_t>(v)];
      threshold += d.nodes()[static_cast<std::size_t>(v)].start *
                   edge_x[static_cast<std::size_t>(v)];
    }
    if (total < kIntTol) continue;
    threshold /= total;

    BranchCandidate cand;
    cand.decision.job = job;
    cand.decision.threshold = threshold;
    double prefix_mass = 0.0;
    for (auto v : edges) {
      if (d.nodes()[static_cast<std::size_t>(v)].start <= threshold + 1e-9) {
        cand.decision.prefix_edges.push_back(v);
        prefix_mass += edge_x[static_cast<std::size_t>(v)] / total;
      }
    }
    cand.score = std::min(prefix_mass, 1.0 - prefix_mass);
    if (cand.score <= kIntTol) {
      // Start-time masses integral; split a fractional edge off directly.
      for (auto v : edges) {
        const double xe = edge_x[static_cast<std::size_t>(v)];
        if (xe > kIntTol && xe < 1.0 - kIntTol &&
            cand.decision.prefix_edges.size() + 1 < edges.size() + 1) {
          cand.decision.prefix_edges = {v};
          cand.score = std::min(xe, 1.0 - xe);
          break;
        }
      }
    }
    if (cand.score > kIntTol &&
        cand.decision.prefix_edges.size() < edges.size() &&
        !cand.decision.prefix_edges.empty())
      out.push_back(std::move(cand));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const BranchCandidate& a, const BranchCandidate& b) {
                     return a.score > b.score;
                   });
  if (static_cast<int>(out.size()) > max_candidates)
    out.resize(static_cast<std::size_t>(max_candidates));
  return out;
}

bool apply_branch(const Diagram& d, AliveMask& alive, const BranchDecision& decision,
                  BranchSide side) {
  std::vector<char> in_prefix(static_cast<std::size_t>(d.size()), 0);
  for (auto v : decision.prefix_edges) in_prefix[static_cast<std::size_t>(v)] = 1;
  bool any_alive = false;
  for (std::int32_t v = 0; v < d.size(); ++v) {
    if (!alive[static_cast<std::size_t>(v)] || d.job(v) != decision.job) continue;
    const bool kill = side == BranchSide::kLeft
                          ? in_prefix[static_cast<std::size_t>(v)] != 0
                          : in_prefix[static_cast<std::size_t>(v)] == 0;
    if (kill)
      alive[static_cast<std::size_t>(v)] = 0;
    else
      any_alive = true;
  }
  return any_alive;
}

namespace {

struct ChildProbe {
  double lb = std::numeric_limits<double>::infinity();
  bool feasible = false;
};

ChildProbe probe_child(const Instance& inst, const Diagram& d, const AliveMask& parent,
                       std::vector<Column>& pool, const BranchDecision& decision,
                       BranchSide side, long long ub, const CgConfig& base, int iters) {
  ChildProbe probe;
  AliveMask mask = parent;
  if (!apply_branch(d, mask, decision, side)) return probe;  // lb = +inf
  probe.feasible = true;
  CgConfig cfg = base;
  cfg.max_iters = iters;
  cfg.fix_period = 0;
  cfg.fix_at_convergence = false;
  const CgState state = run_colgen(d, inst, mask, pool, ub, cfg);
  probe.lb = state.lb;
  return probe;
}

double product_score(double parent_lb, const ChildProbe& l, const ChildProbe& r) {
  const double dl = std::max(l.lb - parent_lb, 1e-6);
  const double dr = std::max(r.lb - parent_lb, 1e-6);
  return dl * dr;  // +inf children dominate every finite product
}

}  // namespace

BranchDecision strong_branch(const Instance& inst, const Diagram& d,
                             const AliveMask& alive, std::vector<Column>& pool,
                             double parent_lb, long long ub,
                             const std::vector<BranchCandidate>& candidates,
                             const SolveConfig& config) {
  if (candidates.empty()) throw std::logic_error("strong_branch: no candidates");
  if (candidates.size() == 1) return candidates.front().decision;

  std::vector<std::pair<double, std::size_t>> ranked;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto& cand = candidates[i];
    const ChildProbe l = probe_child(inst, d, alive, pool, cand.decision,
                                     BranchSide::kLeft, ub, config.cg,
                                     config.sb_probe_iters);
    const ChildProbe r = probe_child(inst, d, alive, pool, cand.decision,
                                     BranchSide::kRight, ub, config.cg,
                                     config.sb_probe_iters);
    ranked.push_back({product_score(parent_lb, l, r), i});
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });

  // Full evaluations in rank order until `patience` of them bring no better
  // score.
  std::size_t best_idx = ranked.front().second;
  double best_score = -1.0;
  int no_improvement = 0;
  for (const auto& [probe_score, idx] : ranked) {
    const auto& cand = candidates[idx];
    const ChildProbe l = probe_child(inst, d, alive, pool, cand.decision,
                                     BranchSide::kLeft, ub, config.cg,
                                     config.cg.max_iters);
    const ChildProbe r = probe_child(inst, d, alive, pool, cand.decision,
                                     BranchSide::kRight, ub, config.cg,
                                     config.cg.max_iters);
    const double score = product_score(parent_lb, l, r);
    if (score > best_score) {
      best_score = score;
      best_idx = idx;
      no_improvement = 0;
    } else if (++no_improvement >= config.sb_patience) {
      break;
    }
  }
  return candidates[best_idx].decision;
}

namespace {

struct TreeNode {
  AliveMask alive;
  double lb = 0.0;
  int depth = 0;
  long long seq = 0;
};

struct NodeOrder {
  bool operator()(const TreeNode& a, const TreeNode& b) const {
    if (a.lb != b.lb) return a.lb > b.lb;          // smaller bound first
    if (a.depth != b.depth) return a.depth < b.depth;  // deeper first on ties
    return a.seq > b.seq;
  }
};

// Integral master solution -> machine sequences; nullopt if fractional.
std::optional<std::vector<std::vector<int>>> integral_sequences(
    const Diagram& d, const std::vector<Column>& pool, const std::vector<int>& active,
    const std::vector<double>& lambda, int machines) {
  std::vector<std::vector<int>> seqs;
  double used = 0.0;
  for (std::size_t k = 0; k < active.size(); ++k) {
    const double rounded = std::round(lambda[k]);
    if (std::abs(lambda[k] - rounded) > kIntTol) return std::nullopt;
    used += rounded;
    if (rounded < 0.5) continue;
    std::vector<int> seq;
    if (active[k] >= 0) {
      const Column& col = pool[static_cast<std::size_t>(active[k])];
      for (auto cnt : col.job_counts)
        if (cnt > 1) return std::nullopt;  // numerically integral yet invalid
      for (auto v : col.hi_nodes) seq.push_back(d.job(v));
    }
    for (int c = 0; c < static_cast<int>(rounded); ++c) seqs.push_back(seq);
  }
  if (static_cast<int>(seqs.size()) != machines || std::abs(used - machines) > kIntTol)
    return std::nullopt;
  return seqs;
}

// Greedy rounding of a fractional master point, repaired by list scheduling.
std::vector<std::vector<int>> rounded_sequences(const Instance& inst, const Diagram& d,
                                                const std::vector<Column>& pool,
                                                const std::vector<int>& active,
                                                const std::vector<double>& lambda) {
  std::vector<std::size_t> order(active.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return lambda[a] > lambda[b]; });
  std::vector<std::vector<int>> seqs;
  std::vector<char> covered(static_cast<std::size_t>(inst.n()), 0);
  for (std::size_t k : order) {
    if (static_cast<int>(seqs.size()) >= inst.machines) break;
    if (active[k] < 0 || lambda[k] <= kIntTol) continue;
    const Column& col = pool[static_cast<std::size_t>(active[k])];
    bool ok = true;
    for (std::size_t j = 0; j < col.job_counts.size(); ++j)
      if (col.job_counts[j] > 1 || (col.job_counts[j] == 1 && covered[j])) ok = false;
    if (!ok) continue;
    std::vector<int> seq;
    for (auto v : col.hi_nodes) {
      seq.push_back(d.job(v));
      covered[static_cast<std::size_t>(d.job(v) - 1)] = 1;
    }
    seqs.push_back(std::move(seq));
  }
  while (static_cast<int>(seqs.size()) < inst.machines) seqs.push_back({});
  // Remaining jobs by EDD onto the least-loaded machine.
  std::vector<long long> load(seqs.size(), 0);
  for (std::size_t k = 0; k < seqs.size(); ++k)
    for (int id : seqs[k]) load[k] += inst.job(id).p;
  std::vector<int> rest;
  for (int id = 1; id <= inst.n(); ++id)
    if (!covered[static_cast<std::size_t>(id - 1)]) rest.push_back(id);
  std::sort(rest.begin(), rest.end(), [&](int a, int b) {
    if (inst.job(a).d != inst.job(b).d) return inst.job(a).d < inst.job(b).d;
    return a < b;
  });
  for (int id : rest) {
    std::size_t k = 0;
    for (std::size_t i = 1; i < load.size(); ++i)
      if (load[i] < load[k]) k = i;
    seqs[k].push_back(id);
    load[k] += inst.job(id).p;
  }
  return seqs;
}

}  // namespace

SolveResult solve(const Instance& inst, const SolveConfig& config) {
  inst.validate();
  const double t_start = now_seconds();
  SolveResult res;

  Schedule incumbent = initial_solution(inst, config.heuristic_budget,
                                        config.heuristic_seed);
  long long ub = incumbent.cost;

  const Partition part = refine_partition(inst);
  const Diagram diagram = build_diagram(inst, part);

  std::vector<Column> pool;
  if (const auto cols = schedule_to_columns(inst, part, diagram, incumbent))
    pool = *cols;

  auto accept = [&](const std::vector<std::vector<int>>& seqs) {
    Schedule cand = evaluate_schedule(inst, seqs);
    if (cand.cost < ub) {
      ub = cand.cost;
      incumbent = std::move(cand);
    }
  };

  std::priority_queue<TreeNode, std::vector<TreeNode>, NodeOrder> open;
  long long next_seq = 0;
  open.push({all_alive(diagram), 0.0, 0, next_seq++});

  double root_lb = 0.0;
  bool out_of_budget = false;

  while (!open.empty()) {
    if (res.stats.nodes >= config.node_limit ||
        now_seconds() - t_start > config.time_limit_s) {
      out_of_budget = true;
      break;
    }
    TreeNode node = open.top();
    open.pop();
    if (integer_lb(node.lb) >= ub) continue;  // pruned

    ++res.stats.nodes;
    const double t_cg = now_seconds();
    AliveMask alive = node.alive;
    const CgState cg = run_colgen(diagram, inst, alive, pool, ub, config.cg);
    res.stats.time_lp_s += now_seconds() - t_cg;
    res.stats.cg_iterations += cg.iterations;
    const double node_lb = std::max(node.lb, cg.lb);
    if (res.stats.nodes == 1) {
      root_lb = node_lb;
      res.stats.iterations_root = cg.iterations;
    }
    if (!cg.converged) out_of_budget = true;  // CG iteration cap; bound still valid
    if (integer_lb(node_lb) >= ub) continue;

    if (const auto seqs =
            integral_sequences(diagram, pool, cg.active, cg.lambda, inst.machines)) {
      accept(*seqs);
      continue;  // leaf
    }
    accept(local_search(inst,
                        evaluate_schedule(inst, rounded_sequences(inst, diagram, pool,
                                                                  cg.active, cg.lambda)),
                        50, config.heuristic_seed)
               .machine_sequences);
    if (integer_lb(node_lb) >= ub) continue;

    const auto x = edge_values(diagram, pool, cg.active, cg.lambda);
    const auto candidates =
        select_branch_candidates(inst, diagram, alive, x, config.sb_candidates);
    if (candidates.empty()) {
      // Integral edge values that did not decompose through the pool; the
      // rounding repair above already consumed whatever it could certify.
      continue;
    }
    const double t_sb = now_seconds();
    const BranchDecision decision = strong_branch(inst, diagram, alive, pool, node_lb,
                                                  ub, candidates, config);
    res.stats.time_lp_s += now_seconds() - t_sb;
    for (const BranchSide side : {BranchSide::kLeft, BranchSide::kRight}) {
      AliveMask child = alive;
      if (!apply_branch(diagram, child, decision, side)) continue;  // infeasible child
      open.push({std::move(child), node_lb, node.depth + 1, next_seq++});
    }
  }

  // Global bound: best open node, or the incumbent when the tree is done.
  double open_lb = static_cast<double>(ub);
  if (out_of_budget) {
    open_lb = root_lb;
    if (!open.empty()) open_lb = std::min(open_lb, open.top().lb);
  }

  res.opt_cost = ub;
  res.schedule = incumbent;
  res.proven_optimal = !out_of_budget;
  res.stats.ub = ub;
  res.stats.lb = res.proven_optimal ? ub : integer_lb(open_lb);
  res.stats.lb_root = root_lb;
  res.stats.time_total_s = now_seconds() - t_start;
  return res;
}

}  // namespace pmbdd
