#include "pmbdd/colgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "pmbdd/kernels.hpp"

namespace pmbdd {

namespace {

// Per-node hi-edge reduced costs c_e - pi_{job(e)} in one sweep.
std::vector<double> hi_reduced_costs(const Diagram& d, const DualVector& duals) {
  const std::size_t nn = static_cast<std::size_t>(d.size());
  std::vector<std::int32_t> cost(nn), job0(nn);
  for (std::size_t v = 0; v < nn; ++v) {
    cost[v] = d.nodes()[v].hi_cost;
    job0[v] = d.job(static_cast<std::int32_t>(v)) - 1;
  }
  std::vector<double> out(nn);
  kern::reduced_costs(cost.data(), job0.data(), duals.job.data(), out.data(), nn);
  return out;
}

}  // namespace

Column column_from_path(const Diagram& d, const std::vector<std::int32_t>& hi_nodes) {
  Column col;
  col.hi_nodes = hi_nodes;
  col.job_counts.assign(static_cast<std::size_t>(d.instance().n()), 0);
  for (auto v : hi_nodes) {
    col.cost += d.nodes()[static_cast<std::size_t>(v)].hi_cost;
    ++col.job_counts[static_cast<std::size_t>(d.job(v) - 1)];
  }
  return col;
}

PricingResult price_backward(const Diagram& d, const AliveMask& alive,
                             const DualVector& duals, PricingMode mode) {
  const auto red = hi_reduced_costs(d, duals);
  PricingResult res;
  res.labels.assign(static_cast<std::size_t>(d.size()), Bucket{});
  Bucket terminal;
  terminal.offer({0.0, 0, kTerminalOne, 0, false});

  auto bucket_of = [&](std::int32_t v) -> const Bucket& {
    return v == kTerminalOne ? terminal : res.labels[static_cast<std::size_t>(v)];
  };

  for (std::int32_t v = d.size() - 1; v >= 0; --v) {
    const auto& nd = d.nodes()[static_cast<std::size_t>(v)];
    Bucket b;
    const Bucket& lo = bucket_of(nd.lo);
    for (int s = 0; s < 2; ++s) {
      if (!std::isfinite(lo.slot[s].value)) continue;
      b.offer({lo.slot[s].value, lo.slot[s].adj_job, nd.lo, static_cast<std::int8_t>(s),
               false});
    }
    if (alive[static_cast<std::size_t>(v)]) {
      const std::int32_t job = d.job(v);
      const Bucket& hi = bucket_of(nd.hi);
      const std::int32_t avoid = mode == PricingMode::kNoConsecutive ? job : 0;
      for (int s = 0; s < 2; ++s) {
        const Label& l = hi.slot[s];
        if (!std::isfinite(l.value)) continue;
        if (avoid != 0 && l.adj_job == avoid) continue;
        b.offer({l.value + red[static_cast<std::size_t>(v)], job, nd.hi,
                 static_cast<std::int8_t>(s), true});
        break;  // slots are sorted; the first admissible one wins
      }
    }
    res.labels[static_cast<std::size_t>(v)] = b;
  }

  const Bucket& at_root = res.labels[static_cast<std::size_t>(d.root())];
  res.min_reduced_cost = at_root.slot[0].value - duals.convexity;
  if (std::isfinite(at_root.slot[0].value)) {
    std::vector<std::int32_t> his;
    std::int32_t v = d.root();
    int s = 0;
    while (v != kTerminalOne) {
      const Label& l = res.labels[static_cast<std::size_t>(v)].slot[s];
      if (l.step_hi) his.push_back(v);
      v = l.next;
      s = l.next_slot;
    }
    res.best = column_from_path(d, his);
  }
  return res;
}

ForwardLabels price_forward(const Diagram& d, const AliveMask& alive,
                            const DualVector& duals, PricingMode mode) {
  const auto red = hi_reduced_costs(d, duals);
  ForwardLabels fwd;
  fwd.at.assign(static_cast<std::size_t>(d.size()), Bucket{});
  fwd.at[static_cast<std::size_t>(d.root())].offer({0.0, 0, kTerminalOne, 0, false});

  for (std::int32_t v = 0; v < d.size(); ++v) {
    const Bucket& b = fwd.at[static_cast<std::size_t>(v)];
    if (!std::isfinite(b.slot[0].value)) continue;
    const auto& nd = d.nodes()[static_cast<std::size_t>(v)];
    auto target = [&](std::int32_t child) -> Bucket& {
      return child == kTerminalOne ? fwd.terminal : fwd.at[static_cast<std::size_t>(child)];
    };
    for (int s = 0; s < 2; ++s) {
      if (!std::isfinite(b.slot[s].value)) continue;
      target(nd.lo).offer(b.slot[s]);
    }
    if (alive[static_cast<std::size_t>(v)]) {
      const std::int32_t job = d.job(v);
      const std::int32_t avoid = mode == PricingMode::kNoConsecutive ? job : 0;
      for (int s = 0; s < 2; ++s) {
        const Label& l = b.slot[s];
        if (!std::isfinite(l.value)) continue;
        if (avoid != 0 && l.adj_job == avoid) continue;
        target(nd.hi).offer({l.value + red[static_cast<std::size_t>(v)], job,
                             kTerminalOne, 0, true});
        break;
      }
    }
  }
  return fwd;
}

MasterResult solve_master(const Instance& inst, const std::vector<Column>& pool,
                          const AliveMask& alive) {
  const int n = inst.n();
  LpProblem lp;
  std::vector<int> active;
  std::vector<int> lp_var;
  for (std::size_t p = 0; p < pool.size(); ++p) {
    if (!pool[p].alive_under(alive)) continue;
    active.push_back(static_cast<int>(p));
    lp_var.push_back(lp.add_var(static_cast<double>(pool[p].cost)));
  }
  // The empty path keeps the convexity row feasible on its own.
  active.push_back(-1);
  lp_var.push_back(lp.add_var(0.0));

  const double big_m = 10.0 * [&] {
    long long s = 0;
    for (const auto& j : inst.jobs) s += static_cast<long long>(j.w) * j.p;
    return static_cast<double>(s);
  }();
  std::vector<int> artificial(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) artificial[static_cast<std::size_t>(j)] = lp.add_var(big_m);

  for (int j = 0; j < n; ++j) {
    std::vector<std::pair<int, double>> coeffs;
    for (std::size_t k = 0; k < active.size(); ++k) {
      if (active[k] < 0) continue;
      const auto cnt = pool[static_cast<std::size_t>(active[k])]
                           .job_counts[static_cast<std::size_t>(j)];
      if (cnt) coeffs.push_back({lp_var[k], static_cast<double>(cnt)});
    }
    coeffs.push_back({artificial[static_cast<std::size_t>(j)], 1.0});
    lp.add_row(RowSense::kEqual, 1.0, std::move(coeffs));
  }
  {
    std::vector<std::pair<int, double>> coeffs;
    for (std::size_t k = 0; k < active.size(); ++k) coeffs.push_back({lp_var[k], 1.0});
    lp.add_row(RowSense::kEqual, static_cast<double>(inst.machines), std::move(coeffs));
  }

  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::kOptimal)
    throw std::logic_error("restricted master must stay feasible");

  MasterResult out;
  out.value = sol.objective;
  out.duals.job.assign(sol.dual.begin(), sol.dual.begin() + n);
  out.duals.convexity = sol.dual[static_cast<std::size_t>(n)];
  out.active = std::move(active);
  out.lambda.resize(out.active.size());
  for (std::size_t k = 0; k < out.active.size(); ++k)
    out.lambda[k] = sol.primal[static_cast<std::size_t>(lp_var[k])];
  for (int j = 0; j < n; ++j)
    if (sol.primal[static_cast<std::size_t>(artificial[static_cast<std::size_t>(j)])] > 1e-9)
      out.artificial_basic = true;
  return out;
}

DualVector smooth_duals(const DualVector& best, const DualVector& rmp, double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw std::invalid_argument("smoothing weight must be in [0,1)");
  DualVector out;
  out.job.resize(rmp.job.size());
  for (std::size_t j = 0; j < rmp.job.size(); ++j)
    out.job[j] = alpha * best.job[j] + (1.0 - alpha) * rmp.job[j];
  out.convexity = alpha * best.convexity + (1.0 - alpha) * rmp.convexity;
  return out;
}

double lagrangian_lb(double rmp_value, double min_reduced_cost, int machines) {
  return rmp_value + machines * std::min(0.0, min_reduced_cost);
}

long long integer_lb(double fractional_lb) {
  return static_cast<long long>(std::ceil(fractional_lb - 1e-6));
}

int fix_edges(const Diagram& d, AliveMask& alive, const ForwardLabels& fwd,
              const PricingResult& bwd, double lb, long long ub,
              double min_reduced_cost, const DualVector& duals, PricingMode mode) {
  if (ub >= std::numeric_limits<long long>::max() / 2) return 0;
  const auto red = hi_reduced_costs(d, duals);
  const int m = d.instance().machines;
  int removed = 0;
  for (std::int32_t v = 0; v < d.size(); ++v) {
    if (!alive[static_cast<std::size_t>(v)]) continue;
    const std::int32_t job = d.job(v);
    const std::int32_t avoid = mode == PricingMode::kNoConsecutive ? job : 0;
    const auto& nd = d.nodes()[static_cast<std::size_t>(v)];
    const Label* pre = fwd.at[static_cast<std::size_t>(v)].best_avoiding(avoid);
    Bucket terminal;
    terminal.offer({0.0, 0, kTerminalOne, 0, false});
    const Bucket& suffix =
        nd.hi == kTerminalOne ? terminal : bwd.labels[static_cast<std::size_t>(nd.hi)];
    const Label* post = suffix.best_avoiding(avoid);
    // Infinite through-value means no admissible path can use the edge at
    // all; it is removable just the same.
    const double through = pre->value + red[static_cast<std::size_t>(v)] + post->value -
                           duals.convexity;
    if (lb + (m - 1) * std::min(0.0, min_reduced_cost) + through >=
        static_cast<double>(ub) - 1e-6) {
      alive[static_cast<std::size_t>(v)] = 0;
      ++removed;
    }
  }
  return removed;
}

CgState run_colgen(const Diagram& d, const Instance& inst, AliveMask& alive,
                   std::vector<Column>& pool, long long ub, const CgConfig& config) {
  CgState state;
  state.ub = ub;
  state.lb = -std::numeric_limits<double>::infinity();
  bool have_center = false;
  double best_lag = -std::numeric_limits<double>::infinity();

  auto consider_bound = [&](const DualVector& duals, double min_rc) {
    double sum = duals.convexity * inst.machines;
    for (double pj : duals.job) sum += pj;
    const double lag = sum + inst.machines * std::min(0.0, min_rc);
    if (lag > best_lag) {
      best_lag = lag;
      state.best_duals = duals;
      have_center = true;
    }
  };
  auto add_column = [&](const Column& col) {
    for (const auto& existing : pool)
      if (existing == col) return false;
    pool.push_back(col);
    return true;
  };

  int since_fix = 0;
  while (state.iterations < config.max_iters) {
    ++state.iterations;
    const MasterResult master = solve_master(inst, pool, alive);
    state.rmp_value = master.value;
    state.duals = master.duals;
    state.lambda = master.lambda;
    state.active = master.active;

    const bool fixing_due = config.fix_period > 0 && ++since_fix >= config.fix_period;

    bool progressed = false;
    if (have_center && config.alpha > 0.0) {
      const DualVector smoothed = smooth_duals(state.best_duals, master.duals, config.alpha);
      PricingResult pr = price_backward(d, alive, smoothed, config.mode);
      consider_bound(smoothed, pr.min_reduced_cost);
      if (pr.min_reduced_cost < -config.negative_tol && pr.best)
        progressed = add_column(*pr.best);
    }

    // Exact pricing runs on a mis-price (Wentges fallback to alpha = 0) and
    // whenever fixing wants fresh labels.
    PricingResult exact;
    bool have_exact = false;
    if (!progressed || fixing_due) {
      exact = price_backward(d, alive, master.duals, config.mode);
      have_exact = true;
      consider_bound(master.duals, exact.min_reduced_cost);
      if (exact.min_reduced_cost < -config.negative_tol && exact.best)
        progressed = add_column(*exact.best) || progressed;
    }
    const bool optimal = have_exact && exact.min_reduced_cost >= -config.negative_tol;

    if (best_lag > state.lb) state.lb = best_lag;
    if (optimal) state.lb = std::max(state.lb, master.value);
    state.lb_int = integer_lb(state.lb);

    if (config.verbose) {
      int alive_edges = 0;
      for (auto a : alive) alive_edges += a;
      std::fprintf(stderr,
                   "cg it=%d rmp=%.4f lb=%.4f min_rc=%.4g pool=%zu alive=%d\n",
                   state.iterations, master.value, state.lb,
                   have_exact ? exact.min_reduced_cost
                              : std::numeric_limits<double>::quiet_NaN(),
                   pool.size(), alive_edges);
    }

    if (have_exact && (fixing_due || (optimal && config.fix_at_convergence))) {
      const ForwardLabels fwd = price_forward(d, alive, master.duals, config.mode);
      state.edges_fixed += fix_edges(d, alive, fwd, exact, master.value, ub,
                                     exact.min_reduced_cost, master.duals, config.mode);
      since_fix = 0;
    }

    if (optimal || !progressed || state.lb_int >= ub) {
      state.converged = true;
      return state;
    }
  }
  return state;  // iteration cap: lb still valid, converged stays false
}

}  // namespace pmbdd
