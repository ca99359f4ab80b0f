#include "pmbdd/instance.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pmbdd/rng.hpp"

namespace pmbdd {

long long Instance::total_processing() const {
  long long s = 0;
  for (const auto& j : jobs) s += j.p;
  return s;
}

void Instance::validate() const {
  if (jobs.empty()) throw InstanceError("instance has no jobs");
  if (machines < 1) throw InstanceError("machine count must be >= 1");
  if (n() < machines) throw InstanceError("need at least as many jobs as machines");
  int pmax = 0;
  for (int i = 0; i < n(); ++i) {
    const Job& j = jobs[static_cast<std::size_t>(i)];
    if (j.id != i + 1) throw InstanceError("job ids must be 1..n in order");
    if (j.p < 1) throw InstanceError("processing time must be >= 1");
    if (j.d < 0) throw InstanceError("due date must be >= 0");
    if (j.w < 1) throw InstanceError("weight must be >= 1");
    pmax = std::max(pmax, j.p);
  }
  if (horizon < pmax) throw InstanceError("horizon shorter than longest job");
}

int horizon_length(const std::vector<Job>& jobs, int machines) {
  if (jobs.empty()) throw InstanceError("horizon_length: empty job list");
  if (machines < 1) throw InstanceError("horizon_length: machine count must be >= 1");
  long long total = 0;
  long long pmax = 0;
  for (const auto& j : jobs) {
    total += j.p;
    pmax = std::max<long long>(pmax, j.p);
  }
  const long long t = (total - pmax + machines - 1) / machines + pmax;
  return static_cast<int>(t);
}

namespace {

// rdd/tf live on the grid k/5, k=1..5.
int grid_index(double v) {
  for (int k = 1; k <= 5; ++k) {
    if (std::abs(v - 0.2 * k) < 1e-9) return k;
  }
  throw InstanceError("rdd/tf must be one of 0.2, 0.4, 0.6, 0.8, 1.0");
}

long long ceil_div(long long a, long long b) {
  return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

long long floor_div(long long a, long long b) {
  return a >= 0 ? a / b : -ceil_div(-a, b);
}

}  // namespace

Instance generate_instance(int n, int m, double rdd, double tf, std::uint64_t seed) {
  if (n < 1 || m < 1) throw InstanceError("generate_instance: n and m must be >= 1");
  const int ri = grid_index(rdd);
  const int ti = grid_index(tf);

  SplitMix64 rng(seed);
  Instance inst;
  inst.machines = m;
  inst.jobs.resize(static_cast<std::size_t>(n));
  long long total_p = 0;
  for (int i = 0; i < n; ++i) {
    Job& j = inst.jobs[static_cast<std::size_t>(i)];
    j.id = i + 1;
    j.p = rng.uniform_int(1, 100);
    j.w = rng.uniform_int(1, 10);
    total_p += j.p;
  }
  // Due-date window [P(1-TF-RDD)/2, P(1-TF+RDD)/2] in exact integer
  // arithmetic: bounds are P*(5 - ti -/+ ri)/10.
  const long long lo = ceil_div(total_p * (5 - ti - ri), 10);
  const long long hi = floor_div(total_p * (5 - ti + ri), 10);
  for (auto& j : inst.jobs) {
    long long raw = lo >= hi ? lo : lo + rng.uniform_int(0, static_cast<int>(hi - lo));
    raw = std::max<long long>(raw, 0);
    j.d = static_cast<int>(raw / m);
  }
  inst.horizon = horizon_length(inst.jobs, m);
  inst.validate();
  return inst;
}

Instance parse_instance(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;

  auto fail = [&](const std::string& msg) -> InstanceError {
    return InstanceError("line " + std::to_string(lineno) + ": " + msg);
  };
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  };
  auto parse_ints = [&](int count) {
    std::istringstream ls(line);
    std::vector<long long> vals;
    long long v;
    while (ls >> v) vals.push_back(v);
    if (!ls.eof()) throw fail("non-integer token");
    if (static_cast<int>(vals.size()) != count)
      throw fail("expected " + std::to_string(count) + " fields");
    return vals;
  };

  if (!next_line()) throw InstanceError("line 1: missing header");
  const auto header = parse_ints(2);
  if (header[0] < 1) throw fail("job count must be >= 1");
  if (header[1] < 1) throw fail("machine count must be >= 1");
  const int n = static_cast<int>(header[0]);

  Instance inst;
  inst.machines = static_cast<int>(header[1]);
  for (int i = 0; i < n; ++i) {
    if (!next_line()) {
      ++lineno;
      throw fail("expected " + std::to_string(n) + " job rows, got " + std::to_string(i));
    }
    const auto row = parse_ints(3);
    Job j;
    j.id = i + 1;
    j.p = static_cast<int>(row[0]);
    j.d = static_cast<int>(row[1]);
    j.w = static_cast<int>(row[2]);
    if (j.p < 1) throw fail("processing time must be >= 1");
    if (j.d < 0) throw fail("due date must be >= 0");
    if (j.w < 1) throw fail("weight must be >= 1");
    inst.jobs.push_back(j);
  }
  if (next_line()) throw fail("trailing content after job rows");
  inst.horizon = horizon_length(inst.jobs, inst.machines);
  inst.validate();
  return inst;
}

std::string write_instance(const Instance& inst) {
  std::ostringstream out;
  out << inst.n() << ' ' << inst.machines << '\n';
  for (const auto& j : inst.jobs) out << j.p << ' ' << j.d << ' ' << j.w << '\n';
  return out.str();
}

Schedule evaluate_schedule(const Instance& inst,
                           const std::vector<std::vector<int>>& machine_sequences) {
  const int n = inst.n();
  Schedule sched;
  sched.machine_sequences = machine_sequences;
  sched.completion_times.assign(static_cast<std::size_t>(n), 0);
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (const auto& seq : machine_sequences) {
    int t = 0;
    for (int id : seq) {
      if (id < 1 || id > n) throw InstanceError("schedule references unknown job");
      if (seen[static_cast<std::size_t>(id - 1)])
        throw InstanceError("job " + std::to_string(id) + " scheduled twice");
      seen[static_cast<std::size_t>(id - 1)] = 1;
      const Job& j = inst.job(id);
      t += j.p;
      sched.completion_times[static_cast<std::size_t>(id - 1)] = t;
      sched.cost += static_cast<long long>(j.w) * std::max(0, t - j.d);
    }
  }
  for (int i = 0; i < n; ++i) {
    if (!seen[static_cast<std::size_t>(i)])
      throw InstanceError("job " + std::to_string(i + 1) + " missing from schedule");
  }
  return sched;
}

long long schedule_cost(const Instance& inst,
                        const std::vector<std::vector<int>>& machine_sequences) {
  return evaluate_schedule(inst, machine_sequences).cost;
}

}  // namespace pmbdd
