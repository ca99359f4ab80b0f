#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pmbdd {

struct Job {
  int id = 0;  // 1-based
  int p = 1;   // processing time, >= 1
  int d = 0;   // due date, >= 0
  int w = 1;   // weight, >= 1
};

struct Instance {
  std::vector<Job> jobs;
  int machines = 1;
  int horizon = 0;  // T

  int n() const { return static_cast<int>(jobs.size()); }
  const Job& job(int id) const { return jobs[static_cast<std::size_t>(id - 1)]; }
  long long total_processing() const;
  void validate() const;  // throws InstanceError on a broken invariant
};

struct Schedule {
  std::vector<std::vector<int>> machine_sequences;  // 1-based job ids
  std::vector<int> completion_times;                // indexed by job id - 1
  long long cost = 0;
};

class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// T = ceil((sum p - p_max) / m) + p_max; a horizon that keeps at least one
// optimal schedule.
int horizon_length(const std::vector<Job>& jobs, int machines);

// Potts-style generator: p ~ U[1,100], w ~ U[1,10], raw due date from
// U[P(1-TF-RDD)/2, P(1-TF+RDD)/2] clamped at 0, then divided by m (floor).
// rdd and tf must be one of 0.2, 0.4, 0.6, 0.8, 1.0.
Instance generate_instance(int n, int m, double rdd, double tf, std::uint64_t seed);

// File format: "n m" header, then n lines "p d w".
Instance parse_instance(const std::string& text);
std::string write_instance(const Instance& inst);

// No-idle stacking of the given sequences; throws InstanceError if the
// sequences do not partition the job set.
Schedule evaluate_schedule(const Instance& inst,
                           const std::vector<std::vector<int>>& machine_sequences);

long long schedule_cost(const Instance& inst,
                        const std::vector<std::vector<int>>& machine_sequences);

}  // namespace pmbdd
