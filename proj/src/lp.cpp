#include "pmbdd/lp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "pmbdd/kernels.hpp"

namespace pmbdd {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr double kFeasTol = 1e-7;
constexpr int kDegenerateStall = 100;  // consecutive zero-step pivots before Bland
constexpr int kRefactorPeriod = 128;

class Simplex {
 public:
  explicit Simplex(const LpProblem& p) : user_rows_(static_cast<int>(p.rows.size())) {
    // Finite upper bounds become extra rows after the user's rows.
    std::vector<LpRow> rows = p.rows;
    for (int j = 0; j < p.num_vars(); ++j) {
      if (std::isfinite(p.upper[static_cast<std::size_t>(j)])) {
        rows.push_back({{{j, 1.0}}, p.upper[static_cast<std::size_t>(j)], RowSense::kLessEqual});
      }
    }
    m_ = static_cast<int>(rows.size());
    nstruct_ = p.num_vars();
    int nslack = 0;
    for (const auto& r : rows)
      if (r.sense == RowSense::kLessEqual) ++nslack;
    ncols_ = nstruct_ + nslack + m_;  // artificials last
    art0_ = nstruct_ + nslack;

    a_.assign(static_cast<std::size_t>(m_) * ncols_, 0.0);
    b_.assign(static_cast<std::size_t>(m_), 0.0);
    flip_.assign(static_cast<std::size_t>(m_), false);
    int slack = nstruct_;
    for (int i = 0; i < m_; ++i) {
      const LpRow& r = rows[static_cast<std::size_t>(i)];
      const bool flip = r.rhs < 0.0;
      flip_[static_cast<std::size_t>(i)] = flip;
      const double sgn = flip ? -1.0 : 1.0;
      for (const auto& [j, v] : r.coeffs) {
        if (j < 0 || j >= nstruct_) throw std::invalid_argument("lp row references bad var");
        col(j)[i] += sgn * v;
      }
      b_[static_cast<std::size_t>(i)] = sgn * r.rhs;
      if (r.sense == RowSense::kLessEqual) col(slack++)[i] = sgn;
      col(art0_ + i)[i] = 1.0;
    }

    cost_.assign(static_cast<std::size_t>(ncols_), 0.0);
    for (int j = 0; j < nstruct_; ++j) cost_[static_cast<std::size_t>(j)] = p.objective[static_cast<std::size_t>(j)];
  }

  LpSolution run(const LpProblem& p) {
    // A numerically wrecked basis (singular at refactorization) restarts the
    // whole solve once from the artificial basis under Bland's rule.
    try {
      return run_once(p, false);
    } catch (const SingularBasis&) {
      return run_once(p, true);
    }
  }

 private:
  struct SingularBasis {};

  LpSolution run_once(const LpProblem& p, bool force_bland) {
    force_bland_ = force_bland;
    basis_.resize(static_cast<std::size_t>(m_));
    for (int i = 0; i < m_; ++i) basis_[static_cast<std::size_t>(i)] = art0_ + i;
    in_basis_.assign(static_cast<std::size_t>(ncols_), false);
    for (int j : basis_) in_basis_[static_cast<std::size_t>(j)] = true;
    binv_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int i = 0; i < m_; ++i) binv_[static_cast<std::size_t>(i) * m_ + i] = 1.0;
    xb_ = b_;

    // Phase 1: minimize the artificial mass.
    std::vector<double> phase1(static_cast<std::size_t>(ncols_), 0.0);
    for (int i = 0; i < m_; ++i) phase1[static_cast<std::size_t>(art0_ + i)] = 1.0;
    c_ = &phase1;
    pin_artificials_ = false;
    if (!iterate()) throw std::logic_error("phase-1 unbounded");
    double art_mass = 0.0;
    for (int i = 0; i < m_; ++i)
      if (basis_[static_cast<std::size_t>(i)] >= art0_) art_mass += xb_[static_cast<std::size_t>(i)];
    LpSolution sol;
    if (art_mass > kFeasTol) {
      sol.status = LpStatus::kInfeasible;
      return sol;
    }
    pivot_out_artificials();

    // Phase 2. Any artificial still basic sits at zero and must stay there.
    c_ = &cost_;
    pin_artificials_ = true;
    if (!iterate()) {
      sol.status = LpStatus::kUnbounded;
      return sol;
    }

    sol.status = LpStatus::kOptimal;
    sol.primal.assign(static_cast<std::size_t>(nstruct_), 0.0);
    for (int i = 0; i < m_; ++i) {
      const int j = basis_[static_cast<std::size_t>(i)];
      if (j < nstruct_) sol.primal[static_cast<std::size_t>(j)] = xb_[static_cast<std::size_t>(i)];
    }
    sol.objective = 0.0;
    for (int j = 0; j < nstruct_; ++j)
      sol.objective += p.objective[static_cast<std::size_t>(j)] * sol.primal[static_cast<std::size_t>(j)];
    const auto y = duals();
    sol.dual.assign(static_cast<std::size_t>(user_rows_), 0.0);
    for (int i = 0; i < user_rows_; ++i)
      sol.dual[static_cast<std::size_t>(i)] =
          flip_[static_cast<std::size_t>(i)] ? -y[static_cast<std::size_t>(i)] : y[static_cast<std::size_t>(i)];
    return sol;
  }

  double* col(int j) { return a_.data() + static_cast<std::size_t>(j) * m_; }
  const double* col(int j) const { return a_.data() + static_cast<std::size_t>(j) * m_; }
  double* binv_row(int i) { return binv_.data() + static_cast<std::size_t>(i) * m_; }

  std::vector<double> duals() const {
    std::vector<double> y(static_cast<std::size_t>(m_), 0.0);
    for (int i = 0; i < m_; ++i) {
      const double cb = (*c_)[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])];
      if (cb != 0.0)
        kern::axpy(cb, binv_.data() + static_cast<std::size_t>(i) * m_, y.data(),
                   static_cast<std::size_t>(m_));
    }
    return y;
  }

  void ftran(int j, std::vector<double>& d) const {
    d.resize(static_cast<std::size_t>(m_));
    const double* aj = col(j);
    for (int i = 0; i < m_; ++i)
      d[static_cast<std::size_t>(i)] = kern::dot(binv_.data() + static_cast<std::size_t>(i) * m_,
                                                 aj, static_cast<std::size_t>(m_));
  }

  // Returns false on unboundedness.
  bool iterate() {
    int degenerate_run = 0;
    bool bland = force_bland_;
    std::vector<double> d;
    for (long iter = 0;; ++iter) {
      if (iter > 200000) throw std::runtime_error("simplex iteration limit");
      if (iter > 0 && iter % kRefactorPeriod == 0) refactor();

      const auto y = duals();
      int enter = -1;
      double best = -kCostTol;
      for (int j = 0; j < ncols_; ++j) {
        if (in_basis_[static_cast<std::size_t>(j)]) continue;
        if (j >= art0_) continue;  // artificials never re-enter
        const double rc = (*c_)[static_cast<std::size_t>(j)] -
                          kern::dot(y.data(), col(j), static_cast<std::size_t>(m_));
        if (rc < best) {
          best = rc;
          enter = j;
          if (bland) break;  // first eligible index
        }
      }
      if (enter < 0) return true;  // optimal

      ftran(enter, d);
      // Two-pass ratio test: find the minimal ratio, then pick the row with
      // the largest pivot among the near-minimal ones (smallest basis index
      // under Bland, which needs the index rule to guarantee termination).
      double theta = std::numeric_limits<double>::infinity();
      auto row_ratio = [&](int i, double di, bool pinned) {
        if (di > kPivotTol) return std::max(0.0, xb_[static_cast<std::size_t>(i)]) / di;
        if (pinned && di < -1e-7) return 0.0;  // basic artificial stays at zero
        return std::numeric_limits<double>::infinity();
      };
      for (int i = 0; i < m_; ++i) {
        const bool pinned =
            pin_artificials_ && basis_[static_cast<std::size_t>(i)] >= art0_;
        theta = std::min(theta, row_ratio(i, d[static_cast<std::size_t>(i)], pinned));
      }
      if (!std::isfinite(theta)) return false;  // unbounded

      int leave = -1;
      bool leave_pinned = false;
      double best_piv = 0.0;
      for (int i = 0; i < m_; ++i) {
        const double di = d[static_cast<std::size_t>(i)];
        const bool pinned =
            pin_artificials_ && basis_[static_cast<std::size_t>(i)] >= art0_;
        if (row_ratio(i, di, pinned) > theta + 1e-9 * (1.0 + theta)) continue;
        const bool better =
            bland ? (leave < 0 || basis_[static_cast<std::size_t>(i)] <
                                      basis_[static_cast<std::size_t>(leave)])
                  : std::abs(di) > best_piv;
        if (better) {
          best_piv = std::abs(di);
          leave = i;
          leave_pinned = pinned && di < 0.0;
        }
      }

      if (leave_pinned) xb_[static_cast<std::size_t>(leave)] = 0.0;
      pivot(enter, leave, d);
      if (theta <= 1e-11) {
        if (++degenerate_run >= kDegenerateStall) bland = true;
      } else {
        degenerate_run = 0;
        bland = force_bland_;
      }
    }
  }

  void pivot(int enter, int leave, const std::vector<double>& d) {
    const double piv = d[static_cast<std::size_t>(leave)];
    double* rl = binv_row(leave);
    for (int k = 0; k < m_; ++k) rl[k] /= piv;
    const double step = xb_[static_cast<std::size_t>(leave)] / piv;
    for (int i = 0; i < m_; ++i) {
      if (i == leave) continue;
      const double di = d[static_cast<std::size_t>(i)];
      if (std::abs(di) > 1e-14) {
        kern::axpy(-di, rl, binv_row(i), static_cast<std::size_t>(m_));
        xb_[static_cast<std::size_t>(i)] -= di * step;
      }
    }
    xb_[static_cast<std::size_t>(leave)] = step;
    in_basis_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(leave)])] = false;
    in_basis_[static_cast<std::size_t>(enter)] = true;
    basis_[static_cast<std::size_t>(leave)] = enter;
  }

  // Rebuild binv_ and xb_ from scratch (Gauss-Jordan with partial pivoting).
  void refactor() {
    std::vector<double> mat(static_cast<std::size_t>(m_) * 2 * m_, 0.0);
    const int w = 2 * m_;
    for (int i = 0; i < m_; ++i) {
      const double* bj = col(basis_[static_cast<std::size_t>(i)]);
      for (int r = 0; r < m_; ++r) mat[static_cast<std::size_t>(r) * w + i] = bj[r];
      mat[static_cast<std::size_t>(i) * w + m_ + i] = 1.0;
    }
    for (int k = 0; k < m_; ++k) {
      int piv = k;
      for (int r = k + 1; r < m_; ++r)
        if (std::abs(mat[static_cast<std::size_t>(r) * w + k]) >
            std::abs(mat[static_cast<std::size_t>(piv) * w + k]))
          piv = r;
      if (std::abs(mat[static_cast<std::size_t>(piv) * w + k]) < 1e-12)
        throw SingularBasis{};
      if (piv != k)
        for (int cidx = 0; cidx < w; ++cidx)
          std::swap(mat[static_cast<std::size_t>(piv) * w + cidx],
                    mat[static_cast<std::size_t>(k) * w + cidx]);
      const double pv = mat[static_cast<std::size_t>(k) * w + k];
      for (int cidx = 0; cidx < w; ++cidx) mat[static_cast<std::size_t>(k) * w + cidx] /= pv;
      for (int r = 0; r < m_; ++r) {
        if (r == k) continue;
        const double f = mat[static_cast<std::size_t>(r) * w + k];
        if (std::abs(f) > 1e-14)
          kern::axpy(-f, mat.data() + static_cast<std::size_t>(k) * w,
                     mat.data() + static_cast<std::size_t>(r) * w, static_cast<std::size_t>(w));
      }
    }
    for (int i = 0; i < m_; ++i)
      for (int k = 0; k < m_; ++k)
        binv_[static_cast<std::size_t>(i) * m_ + k] = mat[static_cast<std::size_t>(i) * w + m_ + k];
    for (int i = 0; i < m_; ++i)
      xb_[static_cast<std::size_t>(i)] = kern::dot(binv_.data() + static_cast<std::size_t>(i) * m_,
                                                   b_.data(), static_cast<std::size_t>(m_));
  }

  // After phase 1, swap basic artificials for structural columns when some
  // pivot element allows it; redundant rows keep their artificial at zero.
  void pivot_out_artificials() {
    std::vector<double> d;
    for (int i = 0; i < m_; ++i) {
      if (basis_[static_cast<std::size_t>(i)] < art0_) continue;
      for (int j = 0; j < art0_; ++j) {
        if (in_basis_[static_cast<std::size_t>(j)]) continue;
        ftran(j, d);
        if (std::abs(d[static_cast<std::size_t>(i)]) > 1e-7) {
          pivot(j, i, d);
          break;
        }
      }
    }
  }

  int user_rows_;
  int m_ = 0;
  int nstruct_ = 0;
  int ncols_ = 0;
  int art0_ = 0;
  bool pin_artificials_ = false;
  bool force_bland_ = false;
  std::vector<double> a_;  // column-major
  std::vector<double> b_;
  std::vector<double> cost_;
  std::vector<bool> flip_;
  const std::vector<double>* c_ = nullptr;
  std::vector<int> basis_;
  std::vector<bool> in_basis_;
  std::vector<double> binv_;  // row-major
  std::vector<double> xb_;
};

}  // namespace

LpSolution SimplexBackend::solve(const LpProblem& p) const {
  Simplex s(p);
  return s.run(p);
}

LpSolution solve_lp(const LpProblem& p) {
  static const SimplexBackend backend;
  return backend.solve(p);
}

std::string write_lp_text(const LpProblem& p) {
  std::ostringstream out;
  out << "Minimize\n obj:";
  for (int j = 0; j < p.num_vars(); ++j) {
    const double c = p.objective[static_cast<std::size_t>(j)];
    if (c != 0.0) out << (c >= 0 ? " +" : " ") << c << " x" << j;
  }
  out << "\nSubject To\n";
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    const auto& r = p.rows[i];
    out << " c" << i << ":";
    for (const auto& [j, v] : r.coeffs) out << (v >= 0 ? " +" : " ") << v << " x" << j;
    out << (r.sense == RowSense::kEqual ? " = " : " <= ") << r.rhs << '\n';
  }
  out << "Bounds\n";
  for (int j = 0; j < p.num_vars(); ++j) {
    if (std::isfinite(p.upper[static_cast<std::size_t>(j)]))
      out << " 0 <= x" << j << " <= " << p.upper[static_cast<std::size_t>(j)] << '\n';
    else
      out << " 0 <= x" << j << '\n';
  }
  out << "End\n";
  return out.str();
}

}  // namespace pmbdd
