#include "packsched/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace packsched {

namespace {

void require_valid_bounds(const BoundVector& bounds) {
  if (bounds.empty()) {
    throw std::invalid_argument("bound vector is empty");
  }
  int prev = 0;
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    if (bounds[i] < 0) {
      throw std::invalid_argument("bounds must be non-negative");
    }
    if (i > 0 && bounds[i] < prev) {
      throw std::invalid_argument("bounds must be non-decreasing");
    }
    prev = bounds[i];
  }
}

// Mass of dist on the half-open rank interval (lo, hi].
double interval_mass(const RankDistribution& dist, int lo, int hi) {
  return dist.cumulative_below(hi + 1) - dist.cumulative_below(lo + 1);
}

// Same-queue pair probability of one rank interval in O(1) via prefix
// sums of mass and squared mass: cost(a..b) = (S^2 - sum of squares) / 2.
// Both the interval DP and the exhaustive search price intervals through
// this one helper so that equal-cost splits compare as exactly equal
// doubles and tie-breaking stays consistent between the two.
class IntervalCost {
 public:
  IntervalCost(const RankDistribution& dist, int top)
      : pre_(top + 1, 0.0), pre2_(top + 1, 0.0) {
    double s = 0.0;
    double s2 = 0.0;
    for (int r = 0; r <= top; ++r) {
      const double m = dist.mass(r);
      s += m;
      s2 += m * m;
      pre_[r] = s;
      pre2_[r] = s2;
    }
  }

  double operator()(int a, int b) const {
    if (a > b) {
      return 0.0;
    }
    const double mass = pre_[b] - (a > 0 ? pre_[a - 1] : 0.0);
    const double sq = pre2_[b] - (a > 0 ? pre2_[a - 1] : 0.0);
    return (mass * mass - sq) / 2.0;
  }

 private:
  std::vector<double> pre_;
  std::vector<double> pre2_;
};

}  // namespace

BatchAdmission admit_batch(const std::vector<Packet>& batch,
                           std::int64_t capacity) {
  if (capacity < 0) {
    throw std::invalid_argument("capacity must be non-negative");
  }
  std::vector<std::size_t> order(batch.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (batch[a].rank != batch[b].rank) return batch[a].rank < batch[b].rank;
    return batch[a].id < batch[b].id;
  });

  const std::size_t keep =
      std::min(batch.size(), static_cast<std::size_t>(capacity));
  BatchAdmission result;
  result.admitted_ids.reserve(keep);
  int max_admitted_rank = -1;
  for (std::size_t i = 0; i < keep; ++i) {
    const Packet& pkt = batch[order[i]];
    result.admitted_ids.push_back(pkt.id);
    max_admitted_rank = std::max(max_admitted_rank, pkt.rank);
  }
  std::sort(result.admitted_ids.begin(), result.admitted_ids.end());
  result.r_drop = max_admitted_rank + 1;  // 0 when nothing was admitted

  // The boundary rank is split when some of its packets were cut; the
  // first loser (by id) becomes the id cutoff.
  if (keep < batch.size() && max_admitted_rank >= 0) {
    const Packet& first_rejected = batch[order[keep]];
    if (first_rejected.rank == max_admitted_rank) {
      result.t_drop = first_rejected.id;
    }
  }
  return result;
}

CountAdmission admit_counts(const std::vector<double>& counts,
                            double capacity) {
  CountAdmission result;
  result.admitted_counts.assign(counts.size(), 0.0);
  double room = capacity;
  int last_rank = -1;
  for (std::size_t r = 0; r < counts.size() && room > 0.0; ++r) {
    const double take = std::min(counts[r], room);
    if (take > 0.0) {
      result.admitted_counts[r] = take;
      room -= take;
      last_rank = static_cast<int>(r);
      if (take < counts[r]) {
        result.boundary_admitted = take;
      }
    }
  }
  result.r_drop = last_rank + 1;
  return result;
}

double sched_unpifoness(const BoundVector& bounds,
                        const RankDistribution& dist) {
  require_valid_bounds(bounds);
  const int max_rank = dist.max_rank();
  double total = 0.0;
  int prev = -1;
  for (int bound : bounds) {
    const int lo = prev + 1;
    const int hi = std::min(bound, max_rank);
    // Every ordered pair of distinct ranks sharing this queue departs in
    // arrival order, not rank order, so each pair contributes its joint
    // probability once.
    for (int r = lo; r <= hi; ++r) {
      for (int r2 = r + 1; r2 <= hi; ++r2) {
        total += dist.mass(r) * dist.mass(r2);
      }
    }
    prev = bound;
  }
  return total;
}

double sched_unpifoness_upper(const BoundVector& bounds,
                              const RankDistribution& dist) {
  require_valid_bounds(bounds);
  double total = 0.0;
  int prev = -1;
  for (int bound : bounds) {
    total += interval_mass(dist, prev, std::min(bound, dist.max_rank()));
    prev = bound;
  }
  return total;
}

std::vector<double> queue_loads(const BoundVector& bounds,
                                const RankDistribution& dist,
                                double total_mass) {
  require_valid_bounds(bounds);
  std::vector<double> loads(bounds.size(), 0.0);
  int prev = -1;
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    const int hi = std::min(bounds[i], dist.max_rank());
    loads[i] = interval_mass(dist, prev, hi) * total_mass;
    prev = bounds[i];
  }
  return loads;
}

double drop_unpifoness(const BoundVector& bounds, const RankDistribution& dist,
                       const std::vector<std::int64_t>& capacities,
                       double total_mass) {
  if (capacities.size() != bounds.size()) {
    throw std::invalid_argument("capacities must match bounds");
  }
  const std::vector<double> loads = queue_loads(bounds, dist, total_mass);
  double overflow = 0.0;
  for (std::size_t i = 0; i < loads.size(); ++i) {
    overflow += std::max(0.0, loads[i] - static_cast<double>(capacities[i]));
  }
  return overflow;
}

BoundVector optimal_bounds_sched(const RankDistribution& dist,
                                 int queue_count) {
  if (queue_count < 1) {
    throw std::invalid_argument("queue_count must be at least 1");
  }
  const int top = dist.top_support();
  const IntervalCost cost(dist, top);

  const double inf = std::numeric_limits<double>::infinity();
  const int cols = top + 2;  // interval starts 0..top+1
  // best[i][j]: cheapest way to spread ranks j..top over queues i..n,
  // with queue i's interval starting at j (its bound may be j-1,
  // leaving it empty).
  std::vector<std::vector<double>> best(queue_count + 2,
                                        std::vector<double>(cols, inf));
  for (int j = 0; j < cols; ++j) {
    best[queue_count + 1][j] = (j == top + 1) ? 0.0 : inf;
  }
  for (int i = queue_count; i >= 1; --i) {
    best[i][top + 1] = 0.0;  // nothing left: trailing queues stay empty
    for (int j = top; j >= 0; --j) {
      double m = inf;
      for (int e = std::max(j - 1, 0); e <= top; ++e) {
        const double c = cost(j, e) + best[i + 1][e + 1];
        m = std::min(m, c);
      }
      best[i][j] = m;
    }
  }

  // Walk forwards, always taking the smallest bound that still reaches
  // the optimum; that makes the result lexicographically smallest.
  BoundVector bounds(queue_count, 0);
  int j = 0;
  for (int i = 1; i <= queue_count; ++i) {
    if (j == top + 1) {
      bounds[i - 1] = top;  // exhausted: repeat the final bound
      continue;
    }
    for (int e = std::max(j - 1, 0); e <= top; ++e) {
      if (cost(j, e) + best[i + 1][e + 1] == best[i][j]) {
        bounds[i - 1] = e;
        j = e + 1;
        break;
      }
    }
  }
  return bounds;
}

BoundVector optimal_bounds_drop(const RankDistribution& dist,
                                const std::vector<std::int64_t>& capacities,
                                double total_mass) {
  if (capacities.empty()) {
    throw std::invalid_argument("need at least one queue");
  }
  const int max_rank = dist.max_rank();
  std::vector<double> cum(max_rank + 1, 0.0);  // mass through rank r, scaled
  double s = 0.0;
  for (int r = 0; r <= max_rank; ++r) {
    s += dist.mass(r) * total_mass;
    cum[r] = s;
  }
  const double tol = 1e-9 * std::max(1.0, total_mass);

  BoundVector bounds(capacities.size(), 0);
  int prev = -1;  // bound of the queue above; -1 before queue 1
  double used = 0.0;
  for (std::size_t i = 0; i < capacities.size(); ++i) {
    const double room = used + static_cast<double>(capacities[i]) + tol;
    // Longest prefix extension this queue can absorb.
    int e = prev;
    while (e + 1 <= max_rank && cum[e + 1] <= room) {
      ++e;
    }
    if (e < 0) {
      // Queue 1 cannot even hold rank 0: no assignment of whole ranks
      // to queues can avoid overflowing it.
      throw std::runtime_error(
          "no zero-drop bounds: rank 0 load exceeds queue 1 capacity");
    }
    // Trim the cutoff over trailing massless ranks so equal-mass bound
    // choices resolve to the smallest one.
    while (e > std::max(prev, 0) && dist.mass(e) * total_mass <= tol) {
      --e;
    }
    bounds[i] = e;
    used = cum[e];
    prev = e;
  }
  if (used + tol < cum[max_rank]) {
    throw std::runtime_error(
        "no zero-drop bounds: queue " + std::to_string(capacities.size()) +
        " cannot absorb the remaining mass");
  }
  return bounds;
}

BoundVector brute_force_bounds(const RankDistribution& dist,
                               const std::vector<std::int64_t>& capacities,
                               BoundObjective objective) {
  const int n = static_cast<int>(capacities.size());
  const int max_rank = dist.max_rank();
  if (n < 1 || n > 4 || max_rank > 12) {
    throw std::invalid_argument("brute force limited to max_rank <= 12, n <= 4");
  }
  const int top = dist.top_support();
  const IntervalCost interval_cost(dist, top);
  double total_mass = 0.0;
  for (std::int64_t c : capacities) {
    total_mass += static_cast<double>(c);
  }

  BoundVector current(n, 0);
  BoundVector bestv;
  double bestc = std::numeric_limits<double>::infinity();
  // Depth-first enumeration of non-decreasing vectors in lexicographic
  // order; keeping strict improvements makes the first optimum (the
  // lexicographically smallest one) stick.
  const auto evaluate = [&]() {
    if (current.back() < top) {
      return;  // ranks above the last bound would be mapped nowhere
    }
    double c;
    if (objective == BoundObjective::Sched) {
      // Accumulate back to front, matching the suffix DP's additions
      // term for term so tied splits stay ties here as well.
      c = 0.0;
      for (int i = n - 1; i >= 0; --i) {
        const int lo = i > 0 ? std::min(current[i - 1], top) + 1 : 0;
        const int hi = std::min(current[i], top);
        c = interval_cost(lo, hi) + c;
      }
    } else {
      c = drop_unpifoness(current, dist, capacities, total_mass);
    }
    if (c < bestc) {
      bestc = c;
      bestv = current;
    }
  };
  const auto recurse = [&](auto&& self, int depth, int lo) -> void {
    if (depth == n) {
      evaluate();
      return;
    }
    for (int q = lo; q <= max_rank; ++q) {
      current[depth] = q;
      self(self, depth + 1, q);
    }
  };
  recurse(recurse, 0, 0);
  return bestv;
}

std::vector<QueueAssignment> batch_map(
    const std::vector<Packet>& admitted,
    const std::vector<std::int64_t>& capacities) {
  std::int64_t room = 0;
  for (std::int64_t c : capacities) {
    room += c;
  }
  if (room < static_cast<std::int64_t>(admitted.size())) {
    throw std::invalid_argument("capacities cannot hold the admitted batch");
  }
  std::vector<Packet> ordered = admitted;
  std::sort(ordered.begin(), ordered.end(), [](const Packet& a, const Packet& b) {
    if (a.rank != b.rank) return a.rank < b.rank;
    return a.id < b.id;
  });

  std::vector<QueueAssignment> queues(capacities.size());
  std::size_t next = 0;
  int prev_bound = -1;
  for (std::size_t i = 0; i < capacities.size(); ++i) {
    QueueAssignment& qa = queues[i];
    const std::size_t take = std::min<std::size_t>(
        static_cast<std::size_t>(capacities[i]), ordered.size() - next);
    qa.packets.assign(ordered.begin() + next, ordered.begin() + next + take);
    next += take;
    qa.bound = qa.packets.empty() ? prev_bound : qa.packets.back().rank;
    if (next < ordered.size() && !qa.packets.empty() &&
        ordered[next].rank == qa.bound) {
      qa.spill_id = ordered[next].id;
    }
    prev_bound = qa.bound;
  }
  return queues;
}

}  // namespace packsched
