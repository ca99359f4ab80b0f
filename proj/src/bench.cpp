#include "pmbdd/bench.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace pmbdd {

namespace {

struct BlockBest {
  long long cost = 0;
  std::vector<int> seq;
};

// Best sequence for one machine's job set, by full permutation scan.
BlockBest best_sequence(const Instance& inst, std::vector<int> ids,
                        std::map<std::vector<int>, BlockBest>& memo) {
  std::sort(ids.begin(), ids.end());
  if (auto it = memo.find(ids); it != memo.end()) return it->second;
  BlockBest best;
  best.cost = std::numeric_limits<long long>::max();
  std::vector<int> perm = ids;
  do {
    long long c = 0;
    int t = 0;
    for (int id : perm) {
      const Job& j = inst.job(id);
      t += j.p;
      c += static_cast<long long>(j.w) * std::max(0, t - j.d);
    }
    if (c < best.cost) {
      best.cost = c;
      best.seq = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  memo.emplace(ids, best);
  return best;
}

}  // namespace

OracleResult brute_force_opt(const Instance& inst) {
  inst.validate();
  const int n = inst.n();
  if (n > 10) throw InstanceError("brute_force_opt: guard allows n <= 10");
  const int m = inst.machines;

  std::map<std::vector<int>, BlockBest> memo;
  // Restricted-growth strings: job i goes to block code[i] <= 1 + max code so
  // far; identical machines make this the full space once per partition.
  std::vector<int> code(static_cast<std::size_t>(n), 0);
  long long best_cost = std::numeric_limits<long long>::max();
  std::vector<std::vector<int>> best_seqs;

  const auto evaluate = [&]() {
    std::vector<std::vector<int>> blocks(static_cast<std::size_t>(m));
    for (int i = 0; i < n; ++i)
      blocks[static_cast<std::size_t>(code[static_cast<std::size_t>(i)])].push_back(i + 1);
    long long total = 0;
    std::vector<std::vector<int>> seqs;
    for (const auto& blk : blocks) {
      if (blk.empty()) {
        seqs.push_back({});
        continue;
      }
      const BlockBest bb = best_sequence(inst, blk, memo);
      total += bb.cost;
      seqs.push_back(bb.seq);
      if (total >= best_cost) break;
    }
    if (static_cast<int>(seqs.size()) == m && total < best_cost) {
      best_cost = total;
      best_seqs = std::move(seqs);
    }
  };

  // Depth-first over restricted-growth strings with at most m blocks.
  const std::function<void(int, int)> assign = [&](int pos, int maxcode) {
    if (pos == n) {
      evaluate();
      return;
    }
    const int hi = std::min(maxcode + 1, m - 1);
    for (int c = 0; c <= hi; ++c) {
      code[static_cast<std::size_t>(pos)] = c;
      assign(pos + 1, std::max(maxcode, c));
    }
  };
  assign(0, -1);

  OracleResult out;
  out.opt_cost = best_cost;
  out.schedule = evaluate_schedule(inst, best_seqs);
  return out;
}

ProfileTable performance_profile(const std::vector<std::vector<double>>& times,
                                 const std::vector<std::string>& methods,
                                 const std::vector<double>& taus) {
  if (times.empty()) throw InstanceError("performance_profile: empty instance set");
  const std::size_t num_methods = methods.size();
  if (num_methods < 2) throw InstanceError("performance_profile: need >= 2 methods");
  for (const auto& row : times)
    if (row.size() != num_methods)
      throw InstanceError("performance_profile: ragged time matrix");

  ProfileTable table;
  table.taus = taus;
  table.methods = methods;
  std::vector<std::vector<double>> ratios(times.size());
  for (std::size_t p = 0; p < times.size(); ++p) {
    double best = *std::min_element(times[p].begin(), times[p].end());
    ratios[p].resize(num_methods);
    for (std::size_t s = 0; s < num_methods; ++s) {
      const double t = times[p][s];
      if (!std::isfinite(t)) {
        ratios[p][s] = std::numeric_limits<double>::infinity();
      } else if (best <= 0.0) {
        ratios[p][s] = t <= 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
      } else {
        ratios[p][s] = t / best;
      }
    }
  }
  for (const double tau : taus) {
    std::vector<double> rho(num_methods, 0.0);
    for (std::size_t s = 0; s < num_methods; ++s) {
      std::size_t count = 0;
      for (std::size_t p = 0; p < times.size(); ++p)
        if (ratios[p][s] <= tau + 1e-12) ++count;
      rho[s] = static_cast<double>(count) / static_cast<double>(times.size());
    }
    table.rho.push_back(std::move(rho));
  }
  return table;
}

std::string profile_to_csv(const ProfileTable& table) {
  std::ostringstream out;
  out << "tau";
  for (const auto& mth : table.methods) out << ',' << mth;
  out << '\n';
  for (std::size_t i = 0; i < table.taus.size(); ++i) {
    out << table.taus[i];
    for (double r : table.rho[i]) out << ',' << r;
    out << '\n';
  }
  return out.str();
}

std::string result_csv_header() {
  return "instance_id,n,m,ub,lb,nodes,cg_iters,time_lp_s,time_total_s,lb_root,iters_root";
}

std::string result_csv_line(const ResultRow& row) {
  std::ostringstream out;
  out << row.instance_id << ',' << row.n << ',' << row.m << ',' << row.ub << ','
      << row.lb << ',' << row.nodes << ',' << row.cg_iters << ',';
  out.precision(6);
  out << std::fixed << row.time_lp_s << ',' << row.time_total_s << ',';
  out.precision(4);
  out << row.lb_root << ',' << row.iters_root;
  return out.str();
}

ResultRow result_row_from(const std::string& instance_id, const Instance& inst,
                          const SolveResult& res) {
  ResultRow row;
  row.instance_id = instance_id;
  row.n = inst.n();
  row.m = inst.machines;
  row.ub = res.stats.ub;
  row.lb = res.stats.lb;
  row.nodes = res.stats.nodes;
  row.cg_iters = res.stats.cg_iterations;
  row.time_lp_s = res.stats.time_lp_s;
  row.time_total_s = res.stats.time_total_s;
  row.lb_root = res.stats.lb_root;
  row.iters_root = res.stats.iterations_root;
  return row;
}

ResultRow solve_to_row(const std::string& instance_id, const Instance& inst,
                       const SolveConfig& config) {
  return result_row_from(instance_id, inst, solve(inst, config));
}

int run_suite(const std::string& dir, const std::string& out_csv,
              const SolveConfig& config) {
  namespace fs = std::filesystem;
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".inst")
      files.push_back(entry.path().string());
  }
  std::sort(files.begin(), files.end());

  std::vector<std::string> done;
  bool has_header = false;
  if (fs::exists(out_csv)) {
    std::ifstream in(out_csv);
    std::string line;
    while (std::getline(in, line)) {
      if (!has_header) {
        has_header = true;
        continue;
      }
      const auto comma = line.find(',');
      if (comma != std::string::npos) done.push_back(line.substr(0, comma));
    }
  }

  std::ofstream out(out_csv, std::ios::app);
  if (!has_header) out << result_csv_header() << '\n';
  int solved = 0;
  for (const auto& file : files) {
    const std::string id = fs::path(file).stem().string();
    if (std::find(done.begin(), done.end(), id) != done.end()) continue;
    std::ifstream in(file);
    std::stringstream buf;
    buf << in.rdbuf();
    const Instance inst = parse_instance(buf.str());
    out << result_csv_line(solve_to_row(id, inst, config)) << '\n';
    out.flush();
    ++solved;
  }
  return solved;
}

}  // namespace pmbdd
