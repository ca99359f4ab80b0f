#include "pmbdd/horizon.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace pmbdd {

namespace {

// WSPT: ascending p/w, ties by descending p, then id. Compared exactly in
// integers: p_a/w_a < p_b/w_b  <=>  p_a*w_b < p_b*w_a.
bool wspt_before(const Job& a, const Job& b) {
  const long long lhs = static_cast<long long>(a.p) * b.w;
  const long long rhs = static_cast<long long>(b.p) * a.w;
  if (lhs != rhs) return lhs < rhs;
  if (a.p != b.p) return a.p > b.p;
  return a.id < b.id;
}

bool lpt_before(const Job& a, const Job& b) {
  if (a.p != b.p) return a.p > b.p;
  return a.id < b.id;
}

}  // namespace

Partition base_partition(const Instance& inst) {
  inst.validate();
  std::set<int> cuts;
  for (const auto& j : inst.jobs) {
    if (j.d > 0 && j.d < inst.horizon) cuts.insert(j.d);
  }
  Partition part;
  part.endpoints.push_back(0);
  part.endpoints.insert(part.endpoints.end(), cuts.begin(), cuts.end());
  part.endpoints.push_back(inst.horizon);
  return part;
}

std::vector<int> interval_permutation(const Instance& inst, int e_lo, int e_hi) {
  if (!(0 <= e_lo && e_lo < e_hi && e_hi <= inst.horizon))
    throw InstanceError("interval_permutation: bad interval bounds");
  const int length = e_hi - e_lo;

  std::vector<Job> longs, late_shorts, ontime_shorts;
  for (const auto& j : inst.jobs) {
    if (j.p >= length) {
      longs.push_back(j);
      continue;
    }
    if (j.d <= e_lo) {
      late_shorts.push_back(j);
    } else if (j.d >= e_hi) {
      ontime_shorts.push_back(j);
    } else {
      throw InstanceError("partition not due-date based: job " + std::to_string(j.id) +
                          " due inside (" + std::to_string(e_lo) + "," +
                          std::to_string(e_hi) + "]");
    }
  }

  std::sort(longs.begin(), longs.end(), lpt_before);
  // Late long jobs keep the LPT slots they occupy but swap into WSPT order
  // among themselves. At most one long job can actually land in the interval,
  // so this only fixes the listing order, not the represented schedules.
  std::vector<std::size_t> late_slots;
  std::vector<Job> late_longs;
  for (std::size_t k = 0; k < longs.size(); ++k) {
    if (longs[k].d <= e_lo) {
      late_slots.push_back(k);
      late_longs.push_back(longs[k]);
    }
  }
  std::sort(late_longs.begin(), late_longs.end(), wspt_before);
  for (std::size_t k = 0; k < late_slots.size(); ++k) longs[late_slots[k]] = late_longs[k];

  std::sort(late_shorts.begin(), late_shorts.end(), wspt_before);
  std::sort(ontime_shorts.begin(), ontime_shorts.end(), lpt_before);

  std::vector<int> order;
  order.reserve(inst.jobs.size());
  for (const auto& j : longs) order.push_back(j.id);
  for (const auto& j : late_shorts) order.push_back(j.id);
  for (const auto& j : ontime_shorts) order.push_back(j.id);
  return order;
}

std::vector<PairViolation> check_appropriate(const Instance& inst, const Partition& part) {
  std::vector<PairViolation> out;
  for (int r = 0; r < part.order(); ++r) {
    const int lo = part.endpoints[static_cast<std::size_t>(r)];
    const int hi = part.endpoints[static_cast<std::size_t>(r) + 1];
    const auto& order = part.permutations[static_cast<std::size_t>(r)];
    for (std::size_t a = 0; a < order.size(); ++a) {
      for (std::size_t b = a + 1; b < order.size(); ++b) {
        const Job& ji = inst.job(order[a]);
        const Job& jj = inst.job(order[b]);
        // Can the two jobs both complete in (lo, hi], in either order? The
        // earlier completion is at least max(p_first, lo + 1).
        const bool fwd = std::max(ji.p, lo + 1) + jj.p <= hi;
        const bool rev = std::max(jj.p, lo + 1) + ji.p <= hi;
        if (!fwd && !rev) continue;
        const bool cond_len = hi <= lo + jj.p;
        const long long interchange =
            ji.d + (static_cast<long long>(jj.w) * ji.p + ji.w - 1) / ji.w - ji.p;
        const bool cond_cost = lo >= interchange;
        if (!cond_len && !cond_cost) out.push_back({r, ji.id, jj.id});
      }
    }
  }
  return out;
}

Partition refine_partition(const Instance& inst) {
  Partition part = base_partition(inst);
  for (;;) {
    part.permutations.clear();
    for (int r = 0; r < part.order(); ++r) {
      part.permutations.push_back(interval_permutation(
          inst, part.endpoints[static_cast<std::size_t>(r)],
          part.endpoints[static_cast<std::size_t>(r) + 1]));
    }
    const auto viol = check_appropriate(inst, part);
    if (viol.empty()) return part;

    const PairViolation& v = viol.front();
    const int lo = part.endpoints[static_cast<std::size_t>(v.interval)];
    const int hi = part.endpoints[static_cast<std::size_t>(v.interval) + 1];
    int cut = lo + inst.job(v.second_job).p;
    if (cut <= lo || cut >= hi) cut = (lo + hi + 1) / 2;
    part.endpoints.insert(
        std::upper_bound(part.endpoints.begin(), part.endpoints.end(), lo) , cut);
  }
}

std::string dump_partition(const Partition& part) {
  std::ostringstream out;
  for (int r = 0; r < part.order(); ++r) {
    out << (r + 1) << ": (" << part.endpoints[static_cast<std::size_t>(r)] << ","
        << part.endpoints[static_cast<std::size_t>(r) + 1] << "]";
    if (r < static_cast<int>(part.permutations.size())) {
      out << " sigma=(";
      const auto& p = part.permutations[static_cast<std::size_t>(r)];
      for (std::size_t k = 0; k < p.size(); ++k) {
        if (k) out << ',';
        out << p[k];
      }
      out << ')';
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace pmbdd
