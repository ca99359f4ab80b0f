#include "pmbdd/heuristic.hpp"

#include <algorithm>
#include <limits>

#include "pmbdd/rng.hpp"

namespace pmbdd {

namespace {

long long machine_cost(const Instance& inst, const std::vector<int>& seq) {
  long long c = 0;
  int t = 0;
  for (int id : seq) {
    const Job& j = inst.job(id);
    t += j.p;
    c += static_cast<long long>(j.w) * std::max(0, t - j.d);
  }
  return c;
}

struct LsState {
  std::vector<std::vector<int>> seqs;
  std::vector<long long> costs;
  long long total = 0;

  void recompute(const Instance& inst, std::size_t mach) {
    total -= costs[mach];
    costs[mach] = machine_cost(inst, seqs[mach]);
    total += costs[mach];
  }
};

// First strictly improving move in a fixed scan order; true if one was made.
bool improve_once(const Instance& inst, LsState& s) {
  const std::size_t m = s.seqs.size();

  // Intra-machine swap.
  for (std::size_t k = 0; k < m; ++k) {
    auto& seq = s.seqs[k];
    for (std::size_t a = 0; a + 1 < seq.size(); ++a) {
      for (std::size_t b = a + 1; b < seq.size(); ++b) {
        std::swap(seq[a], seq[b]);
        const long long c = machine_cost(inst, seq);
        if (c < s.costs[k]) {
          s.total += c - s.costs[k];
          s.costs[k] = c;
          return true;
        }
        std::swap(seq[a], seq[b]);
      }
    }
  }
  // Intra-machine reinsertion.
  for (std::size_t k = 0; k < m; ++k) {
    auto& seq = s.seqs[k];
    for (std::size_t a = 0; a < seq.size(); ++a) {
      for (std::size_t b = 0; b < seq.size(); ++b) {
        if (a == b) continue;
        const int id = seq[a];
        seq.erase(seq.begin() + static_cast<std::ptrdiff_t>(a));
        seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(b), id);
        const long long c = machine_cost(inst, seq);
        if (c < s.costs[k]) {
          s.total += c - s.costs[k];
          s.costs[k] = c;
          return true;
        }
        seq.erase(seq.begin() + static_cast<std::ptrdiff_t>(b));
        seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(a), id);
      }
    }
  }
  // Inter-machine move and block move (length 1, 2, 3).
  for (std::size_t len = 1; len <= 3; ++len) {
    for (std::size_t src = 0; src < m; ++src) {
      auto& from = s.seqs[src];
      if (from.size() < len) continue;
      for (std::size_t a = 0; a + len <= from.size(); ++a) {
        for (std::size_t dst = 0; dst < m; ++dst) {
          if (dst == src) continue;
          auto& to = s.seqs[dst];
          for (std::size_t b = 0; b <= to.size(); ++b) {
            std::vector<int> block(from.begin() + static_cast<std::ptrdiff_t>(a),
                                   from.begin() + static_cast<std::ptrdiff_t>(a + len));
            from.erase(from.begin() + static_cast<std::ptrdiff_t>(a),
                       from.begin() + static_cast<std::ptrdiff_t>(a + len));
            to.insert(to.begin() + static_cast<std::ptrdiff_t>(b), block.begin(),
                      block.end());
            const long long cf = machine_cost(inst, from);
            const long long ct = machine_cost(inst, to);
            if (cf + ct < s.costs[src] + s.costs[dst]) {
              s.total += cf + ct - s.costs[src] - s.costs[dst];
              s.costs[src] = cf;
              s.costs[dst] = ct;
              return true;
            }
            to.erase(to.begin() + static_cast<std::ptrdiff_t>(b),
                     to.begin() + static_cast<std::ptrdiff_t>(b + len));
            from.insert(from.begin() + static_cast<std::ptrdiff_t>(a), block.begin(),
                        block.end());
          }
        }
      }
    }
  }
  // Inter-machine swap.
  for (std::size_t k1 = 0; k1 < m; ++k1) {
    for (std::size_t k2 = k1 + 1; k2 < m; ++k2) {
      auto& s1 = s.seqs[k1];
      auto& s2 = s.seqs[k2];
      for (std::size_t a = 0; a < s1.size(); ++a) {
        for (std::size_t b = 0; b < s2.size(); ++b) {
          std::swap(s1[a], s2[b]);
          const long long c1 = machine_cost(inst, s1);
          const long long c2 = machine_cost(inst, s2);
          if (c1 + c2 < s.costs[k1] + s.costs[k2]) {
            s.total += c1 + c2 - s.costs[k1] - s.costs[k2];
            s.costs[k1] = c1;
            s.costs[k2] = c2;
            return true;
          }
          std::swap(s1[a], s2[b]);
        }
      }
    }
  }
  return false;
}

void perturb(const Instance& inst, LsState& s, SplitMix64& rng) {
  const int n = inst.n();
  const int kick = std::min(3, n);
  std::vector<int> victims;
  while (static_cast<int>(victims.size()) < kick) {
    const int id = rng.uniform_int(1, n);
    if (std::find(victims.begin(), victims.end(), id) == victims.end())
      victims.push_back(id);
  }
  for (int id : victims) {
    for (std::size_t k = 0; k < s.seqs.size(); ++k) {
      auto& seq = s.seqs[k];
      auto it = std::find(seq.begin(), seq.end(), id);
      if (it != seq.end()) {
        seq.erase(it);
        s.recompute(inst, k);
        break;
      }
    }
  }
  // Greedy best reinsertion.
  for (int id : victims) {
    std::size_t best_k = 0, best_pos = 0;
    long long best_delta = std::numeric_limits<long long>::max();
    for (std::size_t k = 0; k < s.seqs.size(); ++k) {
      auto& seq = s.seqs[k];
      for (std::size_t pos = 0; pos <= seq.size(); ++pos) {
        seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(pos), id);
        const long long delta = machine_cost(inst, seq) - s.costs[k];
        seq.erase(seq.begin() + static_cast<std::ptrdiff_t>(pos));
        if (delta < best_delta) {
          best_delta = delta;
          best_k = k;
          best_pos = pos;
        }
      }
    }
    s.seqs[best_k].insert(s.seqs[best_k].begin() + static_cast<std::ptrdiff_t>(best_pos), id);
    s.recompute(inst, best_k);
  }
}

// A machine loaded past the horizon sheds its last job onto the least-loaded
// one; the job's completion strictly drops, so the cost never rises, and an
// horizon-fitting schedule always exists.
void rebalance_to_horizon(const Instance& inst, std::vector<std::vector<int>>& seqs) {
  for (;;) {
    std::vector<long long> load(seqs.size(), 0);
    for (std::size_t k = 0; k < seqs.size(); ++k)
      for (int id : seqs[k]) load[k] += inst.job(id).p;
    std::size_t worst = 0, least = 0;
    for (std::size_t k = 1; k < seqs.size(); ++k) {
      if (load[k] > load[worst]) worst = k;
      if (load[k] < load[least]) least = k;
    }
    if (load[worst] <= inst.horizon) return;
    const int id = seqs[worst].back();
    if (load[least] + inst.job(id).p > inst.horizon) return;  // undersized horizon
    seqs[worst].pop_back();
    seqs[least].push_back(id);
  }
}

Schedule run_ls(const Instance& inst, LsState s, int budget, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<std::vector<int>> best = s.seqs;
  long long best_cost = s.total;
  int stagnant = 0;
  for (int iter = 0; iter < budget; ++iter) {
    if (improve_once(inst, s)) {
      if (s.total < best_cost) {
        best_cost = s.total;
        best = s.seqs;
        stagnant = 0;
      }
    } else {
      if (++stagnant >= 200) {
        s.seqs = best;
        for (std::size_t k = 0; k < s.seqs.size(); ++k) s.recompute(inst, k);
        stagnant = 0;
      }
      perturb(inst, s, rng);
    }
  }
  rebalance_to_horizon(inst, best);
  return evaluate_schedule(inst, best);
}

}  // namespace

Schedule initial_solution(const Instance& inst, int budget, std::uint64_t seed) {
  if (budget < 1) throw InstanceError("heuristic budget must be >= 1");
  inst.validate();
  // EDD list scheduling onto the least-loaded machine.
  std::vector<int> order(static_cast<std::size_t>(inst.n()));
  for (int i = 0; i < inst.n(); ++i) order[static_cast<std::size_t>(i)] = i + 1;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (inst.job(a).d != inst.job(b).d) return inst.job(a).d < inst.job(b).d;
    return a < b;
  });
  LsState s;
  s.seqs.assign(static_cast<std::size_t>(inst.machines), {});
  std::vector<long long> load(static_cast<std::size_t>(inst.machines), 0);
  for (int id : order) {
    std::size_t k = 0;
    for (std::size_t i = 1; i < load.size(); ++i)
      if (load[i] < load[k]) k = i;
    s.seqs[k].push_back(id);
    load[k] += inst.job(id).p;
  }
  s.costs.resize(s.seqs.size());
  for (std::size_t k = 0; k < s.seqs.size(); ++k) {
    s.costs[k] = machine_cost(inst, s.seqs[k]);
    s.total += s.costs[k];
  }
  return run_ls(inst, std::move(s), budget, seed);
}

Schedule local_search(const Instance& inst, const Schedule& start, int budget,
                      std::uint64_t seed) {
  LsState s;
  s.seqs = start.machine_sequences;
  s.costs.resize(s.seqs.size());
  for (std::size_t k = 0; k < s.seqs.size(); ++k) {
    s.costs[k] = machine_cost(inst, s.seqs[k]);
    s.total += s.costs[k];
  }
  return run_ls(inst, std::move(s), budget, seed);
}

namespace {

// Walk the diagram consuming (job, start) steps; nullopt when the sequence is
// not a path.
std::optional<Column> decode_sequence(const Instance& inst, const Diagram& d,
                                      const std::vector<int>& seq) {
  std::vector<std::int32_t> his;
  std::int32_t v = d.root();
  int t = 0;
  for (int id : seq) {
    for (;;) {
      if (v == kTerminalOne) return std::nullopt;
      const auto& nd = d.nodes()[static_cast<std::size_t>(v)];
      if (nd.start == t && d.job(v) == id) {
        his.push_back(v);
        v = nd.hi;
        break;
      }
      v = nd.lo;
    }
    t += inst.job(id).p;
  }
  return column_from_path(d, his);
}

// Reorder one machine by (interval of completion, rank in the interval's
// permutation); repeats until the interval assignment is stable.
std::optional<std::vector<int>> canonical_resort(const Instance& inst,
                                                 const Partition& part,
                                                 std::vector<int> seq) {
  std::vector<std::vector<std::size_t>> rank(
      static_cast<std::size_t>(part.order()),
      std::vector<std::size_t>(static_cast<std::size_t>(inst.n()), 0));
  for (int r = 0; r < part.order(); ++r)
    for (std::size_t i = 0; i < part.permutations[static_cast<std::size_t>(r)].size(); ++i)
      rank[static_cast<std::size_t>(r)]
          [static_cast<std::size_t>(part.permutations[static_cast<std::size_t>(r)][i] - 1)] = i;

  for (int round = 0; round < inst.n() + 2; ++round) {
    std::vector<std::pair<std::pair<int, std::size_t>, int>> keyed;  // ((interval, rank), id)
    int t = 0;
    for (int id : seq) {
      t += inst.job(id).p;
      if (t > inst.horizon) return std::nullopt;
      int r = 0;
      while (part.endpoints[static_cast<std::size_t>(r) + 1] < t) ++r;
      keyed.push_back({{r, rank[static_cast<std::size_t>(r)][static_cast<std::size_t>(id - 1)]}, id});
    }
    std::vector<int> next;
    next.reserve(seq.size());
    std::stable_sort(keyed.begin(), keyed.end());
    for (const auto& [k, id] : keyed) next.push_back(id);
    if (next == seq) return seq;
    seq = std::move(next);
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::vector<Column>> schedule_to_columns(const Instance& inst,
                                                       const Partition& part,
                                                       const Diagram& d,
                                                       const Schedule& sched) {
  std::vector<Column> out;
  for (const auto& seq : sched.machine_sequences) {
    auto col = decode_sequence(inst, d, seq);
    if (!col) {
      const auto resorted = canonical_resort(inst, part, seq);
      if (resorted) col = decode_sequence(inst, d, *resorted);
    }
    if (!col) return std::nullopt;
    out.push_back(std::move(*col));
  }
  return out;
}

}  // namespace pmbdd
