#include "pmbdd/diagram.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace pmbdd {

namespace {

// Flattened representation order: interval-major, sigma_r rank within the
// interval. Representation g stands for job sigma_r[i] completing in I_r.
struct RepSpace {
  const Instance* inst;
  const Partition* part;
  int n;

  int count() const { return part->order() * n; }
  int interval(int g) const { return g / n; }
  int job_id(int g) const {
    return (*part).permutations[static_cast<std::size_t>(g / n)]
                               [static_cast<std::size_t>(g % n)];
  }
  // Can representation g complete at time t + p?
  bool fits(int g, int t) const {
    const int r = interval(g);
    const int c = t + inst->job(job_id(g)).p;
    return part->endpoints[static_cast<std::size_t>(r)] < c &&
           c <= part->endpoints[static_cast<std::size_t>(r) + 1];
  }
  // Least representation after g_from whose job differs from exclude_job and
  // which can complete at accumulated time t. Returns -1 if none.
  int minjob(int g_from, int t, int exclude_job) const {
    for (int g = g_from + 1; g < count(); ++g) {
      if (job_id(g) == exclude_job) continue;
      if (fits(g, t)) return g;
    }
    return -1;
  }
};

}  // namespace

Diagram::Diagram(const Instance& inst, Partition part, std::vector<DiagramNode> nodes,
                 std::int32_t root)
    : inst_(&inst), part_(std::move(part)), nodes_(std::move(nodes)), root_(root) {
  const int n = inst.n();
  rep_job_.resize(static_cast<std::size_t>(part_.order()) * n);
  rep_interval_.resize(rep_job_.size());
  for (int r = 0; r < part_.order(); ++r) {
    for (int i = 0; i < n; ++i) {
      rep_job_[static_cast<std::size_t>(r * n + i)] =
          part_.permutations[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)];
      rep_interval_[static_cast<std::size_t>(r * n + i)] = r;
    }
  }
}

std::int32_t Diagram::find_node(int interval, int job_id, int start) const {
  for (std::int32_t v = 0; v < size(); ++v) {
    const auto& nd = nodes_[static_cast<std::size_t>(v)];
    if (nd.start == start && interval_of_rep(nd.rep) == interval &&
        job_of_rep(nd.rep) == job_id)
      return v;
  }
  return -2;
}

Diagram build_diagram(const Instance& inst, const Partition& part) {
  if (part.permutations.size() != static_cast<std::size_t>(part.order()))
    throw DiagramError("partition has no permutations");
  RepSpace reps{&inst, &part, inst.n()};

  const int root_rep = reps.minjob(-1, 0, 0);
  if (root_rep < 0) throw DiagramError("no representation fits the horizon");

  // Hash-consing on (rep, t); ordered map keeps ids canonical after remap.
  std::map<std::pair<int, int>, std::int32_t> ids;
  struct Raw {
    int rep, start;
    std::pair<int, int> hi, lo;  // child key, or (-1,-1) for the terminal
  };
  std::vector<Raw> raw;

  std::vector<std::pair<int, int>> stack{{root_rep, 0}};
  ids.emplace(stack.back(), 0);
  raw.push_back({});
  while (!stack.empty()) {
    const auto [g, t] = stack.back();
    stack.pop_back();
    const int job = reps.job_id(g);
    const int t_hi = t + inst.job(job).p;

    auto child = [&](int g_next, int t_next) -> std::pair<int, int> {
      if (g_next < 0) return {-1, -1};
      const std::pair<int, int> key{g_next, t_next};
      auto [it, inserted] = ids.emplace(key, static_cast<std::int32_t>(raw.size()));
      if (inserted) {
        raw.push_back({});
        stack.push_back(key);
      }
      return key;
    };

    Raw r;
    r.rep = g;
    r.start = t;
    r.hi = child(reps.minjob(g, t_hi, job), t_hi);
    r.lo = child(reps.minjob(g, t, 0), t);
    raw[static_cast<std::size_t>(ids.at({g, t}))] = r;
  }

  // Canonical topological ids: sort by (rep, start). Successor reps are
  // strictly larger, so children always follow their parent.
  std::vector<std::pair<int, int>> keys;
  keys.reserve(ids.size());
  for (const auto& [key, id] : ids) keys.push_back(key);
  std::sort(keys.begin(), keys.end());
  std::map<std::pair<int, int>, std::int32_t> remap;
  for (std::size_t i = 0; i < keys.size(); ++i)
    remap.emplace(keys[i], static_cast<std::int32_t>(i));

  std::vector<DiagramNode> nodes(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const Raw& r = raw[static_cast<std::size_t>(ids.at(keys[i]))];
    DiagramNode nd;
    nd.rep = r.rep;
    nd.start = r.start;
    nd.hi = r.hi.first < 0 ? kTerminalOne : remap.at(r.hi);
    nd.lo = r.lo.first < 0 ? kTerminalOne : remap.at(r.lo);
    const Job& j = inst.job(reps.job_id(r.rep));
    nd.hi_cost = j.w * std::max(0, r.start + j.p - j.d);
    nodes[i] = nd;
  }
  return Diagram(inst, part, std::move(nodes), remap.at({root_rep, 0}));
}

std::vector<int> PseudoSchedule::job_sequence() const {
  std::vector<int> seq;
  seq.reserve(steps.size());
  for (const auto& s : steps) seq.push_back(s.job);
  return seq;
}

namespace {

void enum_rec(const Diagram& d, const AliveMask* alive, std::size_t limit,
              std::int32_t v, PseudoSchedule& acc, std::vector<PseudoSchedule>& out) {
  if (out.size() >= limit) return;
  const auto& nd = d.nodes()[static_cast<std::size_t>(v)];
  const bool hi_ok = alive == nullptr || (*alive)[static_cast<std::size_t>(v)];
  if (hi_ok) {
    acc.steps.push_back({d.job(v), nd.start, d.completion(v), d.interval(v)});
    acc.cost += nd.hi_cost;
    if (nd.hi == kTerminalOne) {
      out.push_back(acc);
    } else {
      enum_rec(d, alive, limit, nd.hi, acc, out);
    }
    acc.cost -= nd.hi_cost;
    acc.steps.pop_back();
  }
  if (out.size() >= limit) return;
  if (nd.lo == kTerminalOne) {
    out.push_back(acc);
  } else {
    enum_rec(d, alive, limit, nd.lo, acc, out);
  }
}

}  // namespace

std::vector<PseudoSchedule> enumerate_paths(const Diagram& d, const AliveMask& alive,
                                            std::size_t limit) {
  if (limit < 1) throw DiagramError("enumerate_paths: limit must be >= 1");
  std::vector<PseudoSchedule> out;
  PseudoSchedule acc;
  enum_rec(d, &alive, limit, d.root(), acc, out);
  return out;
}

std::vector<PseudoSchedule> enumerate_paths(const Diagram& d, std::size_t limit) {
  if (limit < 1) throw DiagramError("enumerate_paths: limit must be >= 1");
  std::vector<PseudoSchedule> out;
  PseudoSchedule acc;
  enum_rec(d, nullptr, limit, d.root(), acc, out);
  return out;
}

DiagramStats diagram_stats(const Diagram& d) { return diagram_stats(d, AliveMask()); }

DiagramStats diagram_stats(const Diagram& d, const AliveMask& alive) {
  DiagramStats s;
  s.node_count = d.size();
  s.hi_edge_count = d.size();
  s.lo_edge_count = d.size();
  s.alive_hi_count = 0;
  for (std::int32_t v = 0; v < d.size(); ++v) {
    if (alive.empty() || alive[static_cast<std::size_t>(v)]) ++s.alive_hi_count;
  }
  return s;
}

std::string to_dot(const Diagram& d) {
  std::ostringstream out;
  out << "digraph bdd {\n  rankdir=TB;\n  one [shape=box,label=\"1\"];\n";
  for (std::int32_t v = 0; v < d.size(); ++v) {
    const auto& nd = d.nodes()[static_cast<std::size_t>(v)];
    out << "  n" << v << " [label=\"j" << d.job(v) << " I" << (d.interval(v) + 1)
        << " t=" << nd.start << "\"];\n";
    const auto tgt = [&](std::int32_t c) {
      return c == kTerminalOne ? std::string("one") : "n" + std::to_string(c);
    };
    out << "  n" << v << " -> " << tgt(nd.hi) << " [style=solid,label=\"" << nd.hi_cost
        << "\"];\n";
    out << "  n" << v << " -> " << tgt(nd.lo) << " [style=dotted];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace pmbdd
