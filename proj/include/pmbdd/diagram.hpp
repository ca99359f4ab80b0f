#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pmbdd/horizon.hpp"
#include "pmbdd/instance.hpp"

namespace pmbdd {

// Child id of an edge that reaches the 1-terminal. The 0-terminal never
// appears: nodes are only created for representations that can complete in
// their interval, and a path may stop after any prefix of completed jobs.
inline constexpr std::int32_t kTerminalOne = -1;

struct DiagramNode {
  std::int32_t rep = 0;    // global representation index in the <-order
  std::int32_t start = 0;  // accumulated processing time t
  std::int32_t hi = kTerminalOne;
  std::int32_t lo = kTerminalOne;
  std::int32_t hi_cost = 0;  // w_j * max(0, t + p_j - d_j)
};

// Reduced decision diagram over job representations. Node v's hi edge
// schedules job(v) on [start, start + p), its lo edge skips the
// representation. Nodes are stored in topological order, root first; both
// children of node v have a larger id (or are the terminal).
class Diagram {
 public:
  Diagram(const Instance& inst, Partition part, std::vector<DiagramNode> nodes,
          std::int32_t root);

  const Instance& instance() const { return *inst_; }
  const Partition& partition() const { return part_; }
  const std::vector<DiagramNode>& nodes() const { return nodes_; }
  std::int32_t root() const { return root_; }
  int size() const { return static_cast<int>(nodes_.size()); }

  int job_of_rep(std::int32_t rep) const { return rep_job_[static_cast<std::size_t>(rep)]; }
  int interval_of_rep(std::int32_t rep) const {
    return rep_interval_[static_cast<std::size_t>(rep)];
  }
  // 1-based job id of the node's representation.
  int job(std::int32_t v) const { return job_of_rep(nodes_[static_cast<std::size_t>(v)].rep); }
  int interval(std::int32_t v) const {
    return interval_of_rep(nodes_[static_cast<std::size_t>(v)].rep);
  }
  int completion(std::int32_t v) const {
    const auto& nd = nodes_[static_cast<std::size_t>(v)];
    return nd.start + inst_->job(job(v)).p;
  }
  // Node id for a (interval, job, start) configuration, or -2 if absent.
  std::int32_t find_node(int interval, int job_id, int start) const;

 private:
  const Instance* inst_;
  Partition part_;
  std::vector<DiagramNode> nodes_;
  std::int32_t root_;
  std::vector<int> rep_job_;       // rep -> 1-based job id
  std::vector<int> rep_interval_;  // rep -> 0-based interval
};

// One alive flag per node's hi edge; lo edges are never removed.
using AliveMask = std::vector<std::uint8_t>;

inline AliveMask all_alive(const Diagram& d) {
  return AliveMask(static_cast<std::size_t>(d.size()), 1);
}

class DiagramError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Requires check_appropriate(inst, part) to be empty. Throws DiagramError if
// no job can be scheduled at all (horizon too small).
Diagram build_diagram(const Instance& inst, const Partition& part);

struct PseudoSchedule {
  struct Step {
    int job;         // 1-based
    int start;
    int completion;
    int interval;    // 0-based
  };
  std::vector<Step> steps;
  long long cost = 0;

  std::vector<int> job_sequence() const;
};

// Depth-first enumeration of root->ONE paths (hi branch first), truncated at
// limit. Paths through dead hi edges are skipped when a mask is given.
std::vector<PseudoSchedule> enumerate_paths(const Diagram& d, std::size_t limit);
std::vector<PseudoSchedule> enumerate_paths(const Diagram& d, const AliveMask& alive,
                                            std::size_t limit);

struct DiagramStats {
  int node_count = 0;
  int hi_edge_count = 0;
  int lo_edge_count = 0;
  int alive_hi_count = 0;
};

DiagramStats diagram_stats(const Diagram& d);
DiagramStats diagram_stats(const Diagram& d, const AliveMask& alive);

// Graphviz dump; solid = hi, dotted = lo.
std::string to_dot(const Diagram& d);

}  // namespace pmbdd
