#include "pmbdd/formulations.hpp"

namespace pmbdd {

TifModel build_tif(const Instance& inst) {
  const int n = inst.n();
  const int T = inst.horizon;
  const CostTable costs(inst);
  TifModel model;
  model.var.assign(static_cast<std::size_t>(n), {});
  for (int j = 1; j <= n; ++j) {
    const int last = T - inst.job(j).p + 1;
    auto& row = model.var[static_cast<std::size_t>(j - 1)];
    row.assign(static_cast<std::size_t>(T), -1);
    for (int t = 1; t <= last; ++t)
      row[static_cast<std::size_t>(t - 1)] = model.lp.add_var(costs.tif(j, t));
  }
  for (int j = 1; j <= n; ++j) {
    std::vector<std::pair<int, double>> coeffs;
    const int last = T - inst.job(j).p + 1;
    for (int t = 1; t <= last; ++t) coeffs.push_back({model.var_of(j, t), 1.0});
    model.lp.add_row(RowSense::kEqual, 1.0, std::move(coeffs));
  }
  for (int t = 1; t <= T; ++t) {
    std::vector<std::pair<int, double>> coeffs;
    for (int j = 1; j <= n; ++j) {
      const int last = T - inst.job(j).p + 1;
      for (int s = std::max(1, t - inst.job(j).p + 1); s <= std::min(t, last); ++s)
        coeffs.push_back({model.var_of(j, s), 1.0});
    }
    model.lp.add_row(RowSense::kLessEqual, static_cast<double>(inst.machines),
                     std::move(coeffs));
  }
  return model;
}

AtifModel build_atif(const Instance& inst) {
  const int n = inst.n();
  const int T = inst.horizon;
  const CostTable costs(inst);
  AtifModel model;
  model.n = n;
  model.horizon = T;
  model.var.assign(static_cast<std::size_t>((n + 1) * (n + 1) * (T + 1)), -1);

  auto proc = [&](int j) { return j == 0 ? 0 : inst.job(j).p; };
  auto slot = [&](int i, int j, int t) -> int& {
    return model.var[static_cast<std::size_t>((i * (n + 1) + j) * (T + 1) + t)];
  };

  // x_ij^t: job i completes and job j starts at t.
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      if (i == j && i != 0) continue;
      if (i == 0 && j == 0) {
        for (int t = 0; t <= T; ++t) slot(0, 0, t) = model.lp.add_var(0.0);
        continue;
      }
      for (int t = proc(i); t <= T - proc(j); ++t)
        slot(i, j, t) = model.lp.add_var(j == 0 ? 0.0 : costs.atif(j, t));
    }
  }

  auto add_if = [&](std::vector<std::pair<int, double>>& coeffs, int i, int j, int t,
                    double v) {
    if (t < 0 || t > T) return;
    const int x = model.var_of(i, j, t);
    if (x >= 0) coeffs.push_back({x, v});
  };

  // Each job starts exactly once.
  for (int j = 1; j <= n; ++j) {
    std::vector<std::pair<int, double>> coeffs;
    for (int i = 0; i <= n; ++i) {
      if (i == j) continue;
      for (int t = proc(i); t <= T - proc(j); ++t) add_if(coeffs, i, j, t, 1.0);
    }
    model.lp.add_row(RowSense::kEqual, 1.0, std::move(coeffs));
  }
  // Conservation through each job's execution arc.
  for (int i = 1; i <= n; ++i) {
    for (int t = 0; t <= T - proc(i); ++t) {
      std::vector<std::pair<int, double>> coeffs;
      for (int j = 0; j <= n; ++j) {
        if (j == i) continue;
        if (t - proc(j) >= 0) add_if(coeffs, j, i, t, 1.0);
        add_if(coeffs, i, j, t + proc(i), -1.0);
      }
      model.lp.add_row(RowSense::kEqual, 0.0, std::move(coeffs));
    }
  }
  // Idle chain.
  for (int t = 0; t <= T - 1; ++t) {
    std::vector<std::pair<int, double>> coeffs;
    for (int j = 0; j <= n; ++j) {
      if (t - proc(j) >= 0) add_if(coeffs, j, 0, t, 1.0);
      add_if(coeffs, 0, j, t + 1, -1.0);
    }
    model.lp.add_row(RowSense::kEqual, 0.0, std::move(coeffs));
  }
  // Source.
  {
    std::vector<std::pair<int, double>> coeffs;
    for (int j = 0; j <= n; ++j) add_if(coeffs, 0, j, 0, 1.0);
    model.lp.add_row(RowSense::kEqual, static_cast<double>(inst.machines),
                     std::move(coeffs));
  }
  return model;
}

BddfModel build_bddf(const Instance& inst, const Diagram& d) {
  return build_bddf(inst, d, all_alive(d));
}

BddfModel build_bddf(const Instance& inst, const Diagram& d, const AliveMask& alive) {
  BddfModel model;
  const int nn = d.size();
  model.hi_var.assign(static_cast<std::size_t>(nn), -1);
  model.lo_var.assign(static_cast<std::size_t>(nn), -1);
  for (std::int32_t v = 0; v < nn; ++v) {
    if (alive[static_cast<std::size_t>(v)])
      model.hi_var[static_cast<std::size_t>(v)] =
          model.lp.add_var(d.nodes()[static_cast<std::size_t>(v)].hi_cost);
    model.lo_var[static_cast<std::size_t>(v)] = model.lp.add_var(0.0);
  }

  // Assignment: one alive hi edge per job.
  for (int j = 1; j <= inst.n(); ++j) {
    std::vector<std::pair<int, double>> coeffs;
    for (std::int32_t v = 0; v < nn; ++v) {
      if (model.hi_var[static_cast<std::size_t>(v)] >= 0 && d.job(v) == j)
        coeffs.push_back({model.hi_var[static_cast<std::size_t>(v)], 1.0});
    }
    model.lp.add_row(RowSense::kEqual, 1.0, std::move(coeffs));
  }

  // Flow balance at every non-root node, terminal inflow = m.
  std::vector<std::vector<std::pair<int, double>>> node_rows(static_cast<std::size_t>(nn));
  std::vector<std::pair<int, double>> terminal;
  auto out_edges = [&](std::int32_t v) {
    std::vector<std::pair<int, int>> e;  // (lp var, child)
    if (model.hi_var[static_cast<std::size_t>(v)] >= 0)
      e.push_back({model.hi_var[static_cast<std::size_t>(v)],
                   d.nodes()[static_cast<std::size_t>(v)].hi});
    e.push_back({model.lo_var[static_cast<std::size_t>(v)],
                 d.nodes()[static_cast<std::size_t>(v)].lo});
    return e;
  };
  for (std::int32_t v = 0; v < nn; ++v) {
    for (const auto& [x, child] : out_edges(v)) {
      if (child == kTerminalOne)
        terminal.push_back({x, 1.0});
      else
        node_rows[static_cast<std::size_t>(child)].push_back({x, -1.0});
    }
  }
  for (std::int32_t v = 0; v < nn; ++v) {
    if (v == d.root()) continue;
    auto row = node_rows[static_cast<std::size_t>(v)];
    for (const auto& [x, child] : out_edges(v)) row.push_back({x, 1.0});
    model.lp.add_row(RowSense::kEqual, 0.0, std::move(row));
  }
  model.lp.add_row(RowSense::kEqual, static_cast<double>(inst.machines),
                   std::move(terminal));
  return model;
}

std::vector<double> project_bddf_to_tif(const Diagram& d, const BddfModel& bddf,
                                        const std::vector<double>& bddf_primal,
                                        const TifModel& tif) {
  std::vector<double> y(static_cast<std::size_t>(tif.lp.num_vars()), 0.0);
  for (std::int32_t v = 0; v < d.size(); ++v) {
    const int x = bddf.hi_var[static_cast<std::size_t>(v)];
    if (x < 0) continue;
    const double val = bddf_primal[static_cast<std::size_t>(x)];
    if (val == 0.0) continue;
    const int period = d.nodes()[static_cast<std::size_t>(v)].start + 1;
    y[static_cast<std::size_t>(tif.var_of(d.job(v), period))] += val;
  }
  return y;
}

}  // namespace pmbdd
