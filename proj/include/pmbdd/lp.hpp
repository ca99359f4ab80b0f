#pragma once

#include <limits>
#include <string>
#include <vector>

namespace pmbdd {

enum class RowSense { kEqual, kLessEqual };

struct LpRow {
  std::vector<std::pair<int, double>> coeffs;  // (variable, coefficient)
  double rhs = 0.0;
  RowSense sense = RowSense::kEqual;
};

// min c.x  s.t. rows, 0 <= x <= upper (upper optional).
struct LpProblem {
  std::vector<double> objective;
  std::vector<double> upper;  // +inf when unbounded above
  std::vector<LpRow> rows;

  int num_vars() const { return static_cast<int>(objective.size()); }
  int add_var(double cost, double ub = std::numeric_limits<double>::infinity()) {
    objective.push_back(cost);
    upper.push_back(ub);
    return num_vars() - 1;
  }
  void add_row(RowSense sense, double rhs, std::vector<std::pair<int, double>> coeffs) {
    rows.push_back({std::move(coeffs), rhs, sense});
  }
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  double objective = 0.0;
  std::vector<double> primal;
  std::vector<double> dual;  // one multiplier per problem row
};

// Abstract backend so an external engine can be plugged in behind the same
// contract; the built-in engine is a dense two-phase revised simplex with a
// Bland fallback after degeneracy stalling.
class LpBackend {
 public:
  virtual ~LpBackend() = default;
  virtual LpSolution solve(const LpProblem& p) const = 0;
};

class SimplexBackend final : public LpBackend {
 public:
  LpSolution solve(const LpProblem& p) const override;
};

LpSolution solve_lp(const LpProblem& p);

// CPLEX-LP-style text export for debugging.
std::string write_lp_text(const LpProblem& p);

}  // namespace pmbdd
