#include "support/tableau_lp.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

std::optional<double> tableau_lp_optimum(const pmbdd::LpProblem& p) {
  using pmbdd::RowSense;
  const int n = p.num_vars();
  struct R {
    std::vector<double> a;
    double b = 0.0;
    int slack_sign = 0;  // +1 slack, -1 surplus, 0 none
  };
  std::vector<R> rows;
  auto add_row = [&](const pmbdd::LpRow& row) {
    R r;
    r.a.assign(static_cast<std::size_t>(n), 0.0);
    for (const auto& [j, v] : row.coeffs) r.a[static_cast<std::size_t>(j)] += v;
    r.b = row.rhs;
    r.slack_sign = row.sense == RowSense::kLessEqual ? 1 : 0;
    if (r.b < 0) {
      for (auto& v : r.a) v = -v;
      r.b = -r.b;
      r.slack_sign = -r.slack_sign;
    }
    rows.push_back(std::move(r));
  };
  for (const auto& row : p.rows) add_row(row);
  for (int j = 0; j < n; ++j) {
    if (std::isfinite(p.upper[static_cast<std::size_t>(j)]))
      add_row({{{j, 1.0}}, p.upper[static_cast<std::size_t>(j)], RowSense::kLessEqual});
  }
  const int m = static_cast<int>(rows.size());
  int nslack = 0;
  for (const auto& r : rows)
    if (r.slack_sign != 0) ++nslack;
  const int total = n + nslack + m;

  std::vector<std::vector<double>> tab(
      static_cast<std::size_t>(m + 1),
      std::vector<double>(static_cast<std::size_t>(total + 1), 0.0));
  double big = 1.0;
  for (double c : p.objective) big = std::max(big, std::abs(c));
  for (const auto& r : rows) big = std::max(big, std::abs(r.b));
  const double M = 1e7 * big;

  std::vector<int> basis(static_cast<std::size_t>(m));
  int slack = n;
  for (int i = 0; i < m; ++i) {
    auto& t = tab[static_cast<std::size_t>(i)];
    for (int j = 0; j < n; ++j) t[static_cast<std::size_t>(j)] = rows[static_cast<std::size_t>(i)].a[static_cast<std::size_t>(j)];
    if (rows[static_cast<std::size_t>(i)].slack_sign != 0)
      t[static_cast<std::size_t>(slack++)] = rows[static_cast<std::size_t>(i)].slack_sign;
    t[static_cast<std::size_t>(n + nslack + i)] = 1.0;
    t[static_cast<std::size_t>(total)] = rows[static_cast<std::size_t>(i)].b;
    basis[static_cast<std::size_t>(i)] = n + nslack + i;
  }
  std::vector<double> cost(static_cast<std::size_t>(total), 0.0);
  for (int j = 0; j < n; ++j) cost[static_cast<std::size_t>(j)] = p.objective[static_cast<std::size_t>(j)];
  for (int i = 0; i < m; ++i) cost[static_cast<std::size_t>(n + nslack + i)] = M;

  auto& z = tab[static_cast<std::size_t>(m)];
  for (int j = 0; j <= total; ++j) {
    double s = 0.0;
    for (int i = 0; i < m; ++i)
      s += cost[static_cast<std::size_t>(basis[static_cast<std::size_t>(i)])] *
           tab[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    z[static_cast<std::size_t>(j)] = s - (j < total ? cost[static_cast<std::size_t>(j)] : 0.0);
  }

  for (long iter = 0; iter < 2000000; ++iter) {
    int enter = -1;  // Bland: first improving column
    for (int j = 0; j < total; ++j) {
      if (z[static_cast<std::size_t>(j)] > 1e-9) {
        enter = j;
        break;
      }
    }
    if (enter < 0) {
      double art = 0.0;
      for (int i = 0; i < m; ++i)
        if (basis[static_cast<std::size_t>(i)] >= n + nslack)
          art += tab[static_cast<std::size_t>(i)][static_cast<std::size_t>(total)];
      if (art > 1e-6) return std::nullopt;
      double obj = 0.0;
      for (int i = 0; i < m; ++i) {
        const int bj = basis[static_cast<std::size_t>(i)];
        if (bj < n)
          obj += p.objective[static_cast<std::size_t>(bj)] *
                 tab[static_cast<std::size_t>(i)][static_cast<std::size_t>(total)];
      }
      return obj;
    }
    int leave = -1;
    double best = 0.0;
    for (int i = 0; i < m; ++i) {
      const double a = tab[static_cast<std::size_t>(i)][static_cast<std::size_t>(enter)];
      if (a > 1e-9) {
        const double ratio =
            tab[static_cast<std::size_t>(i)][static_cast<std::size_t>(total)] / a;
        if (leave < 0 || ratio < best - 1e-12 ||
            (ratio < best + 1e-12 &&
             basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
          best = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) throw std::runtime_error("tableau oracle: unbounded");
    const double piv = tab[static_cast<std::size_t>(leave)][static_cast<std::size_t>(enter)];
    for (int j = 0; j <= total; ++j)
      tab[static_cast<std::size_t>(leave)][static_cast<std::size_t>(j)] /= piv;
    for (int i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const double f = tab[static_cast<std::size_t>(i)][static_cast<std::size_t>(enter)];
      if (std::abs(f) < 1e-13) continue;
      for (int j = 0; j <= total; ++j)
        tab[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -=
            f * tab[static_cast<std::size_t>(leave)][static_cast<std::size_t>(j)];
    }
    basis[static_cast<std::size_t>(leave)] = enter;
  }
  throw std::runtime_error("tableau oracle: iteration limit");
}
