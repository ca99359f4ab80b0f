#pragma once

#include <string>
#include <vector>

#include "pmbdd/branch_price.hpp"
#include "pmbdd/instance.hpp"

namespace pmbdd {

// Exact optimum by enumerating machine partitions (identical machines, so
// set partitions into at most m blocks) and, per block, every sequence.
// Guarded at n <= 10.
struct OracleResult {
  long long opt_cost = 0;
  Schedule schedule;
};
OracleResult brute_force_opt(const Instance& inst);

// Dolan-More performance profiles. times[p][s] is the runtime of method s on
// instance p; +inf marks unsolved runs (they never enter any rho).
struct ProfileTable {
  std::vector<double> taus;
  std::vector<std::string> methods;
  std::vector<std::vector<double>> rho;  // rho[tau][method]
};
ProfileTable performance_profile(const std::vector<std::vector<double>>& times,
                                 const std::vector<std::string>& methods,
                                 const std::vector<double>& taus);

std::string profile_to_csv(const ProfileTable& table);

// One result row of the solver CSV (header fixed by result_csv_header()).
struct ResultRow {
  std::string instance_id;
  int n = 0;
  int m = 0;
  long long ub = 0;
  long long lb = 0;
  long long nodes = 0;
  long long cg_iters = 0;
  double time_lp_s = 0.0;
  double time_total_s = 0.0;
  double lb_root = 0.0;
  long long iters_root = 0;
};

std::string result_csv_header();
std::string result_csv_line(const ResultRow& row);

ResultRow result_row_from(const std::string& instance_id, const Instance& inst,
                          const SolveResult& res);
ResultRow solve_to_row(const std::string& instance_id, const Instance& inst,
                       const SolveConfig& config);

// Solves every *.inst file in `dir` (sorted by name) and appends rows to
// `out_csv`. Rows already present are kept and their instances skipped, so
// interrupted batches can resume.
int run_suite(const std::string& dir, const std::string& out_csv,
              const SolveConfig& config);

}  // namespace pmbdd
