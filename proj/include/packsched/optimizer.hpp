// Batch-mode analysis: given a whole batch of packets (or a rank
// histogram standing in for one), compute the ideal admission cut, queue
// bounds that minimize scheduling or dropping mismatch against an ideal
// sorted buffer, and the associated objective values.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "packsched/model.hpp"

namespace packsched {

// Result of trimming a batch to buffer size B. The admitted set is the B
// lowest packets in (rank, id) order. r_drop is the smallest rank whose
// packets are (at least partly) cut: every admitted packet has
// rank < r_drop, and t_drop, when present, is the id of the first
// boundary-rank packet that did not fit.
struct BatchAdmission {
  int r_drop = 0;
  std::optional<std::int64_t> t_drop;
  std::vector<std::int64_t> admitted_ids;  // ascending
};

BatchAdmission admit_batch(const std::vector<Packet>& batch,
                           std::int64_t capacity);

// Histogram flavour of the same cut: returns r_drop, the admitted
// per-rank counts, and how many boundary-rank packets were kept.
struct CountAdmission {
  int r_drop = 0;
  std::vector<double> admitted_counts;
  double boundary_admitted = 0.0;
};

CountAdmission admit_counts(const std::vector<double>& counts, double capacity);

// Bound vectors q_1 <= ... <= q_n assign rank interval
// (q_{i-1}, q_i] to queue i (q_0 = -1). Entries live in [0, max_rank].
using BoundVector = std::vector<int>;

// Probability that two independent draws land in the same queue in the
// wrong service order, i.e. sum over queues of sum_{r < r'} p(r) p(r')
// within the queue's interval. Throws on non-monotone or out-of-range
// bounds.
double sched_unpifoness(const BoundVector& bounds, const RankDistribution& dist);

// Closed-form upper bound on the same quantity: sum over queues of
// cumulative(q_{i-1} < r <= q_i) masses, each interval contributing its
// total mass.
double sched_unpifoness_upper(const BoundVector& bounds,
                              const RankDistribution& dist);

// Expected packet count per queue for a batch of `total_mass` packets
// distributed as `dist` and split by `bounds` (ranks above q_n fall off
// the end and are not loaded anywhere).
std::vector<double> queue_loads(const BoundVector& bounds,
                                const RankDistribution& dist,
                                double total_mass);

// Mass that overflows the per-queue capacities under `bounds`:
// sum_i max(0, load_i - capacity_i).
double drop_unpifoness(const BoundVector& bounds, const RankDistribution& dist,
                       const std::vector<std::int64_t>& capacities,
                       double total_mass);

// Exact minimizer of sched_unpifoness over monotone bound vectors for
// `queue_count` queues via interval-partition dynamic programming;
// lexicographically smallest among the optima. O(max_rank^2 *
// queue_count).
BoundVector optimal_bounds_sched(const RankDistribution& dist, int queue_count);

// Greedy zero-overflow bounds: each queue takes the longest rank prefix
// its capacity can hold, with the cutoff trimmed down across trailing
// zero-mass ranks. Throws std::runtime_error when no monotone vector
// maps all mass without overflowing some queue (reporting the first
// queue whose capacity is exceeded).
BoundVector optimal_bounds_drop(const RankDistribution& dist,
                                const std::vector<std::int64_t>& capacities,
                                double total_mass);

enum class BoundObjective { Sched, Drop };

// Exhaustive reference search over all monotone bound vectors in
// [0, max_rank]^n. Returns the lexicographically smallest minimizer of
// the chosen objective. Guarded to small instances (max_rank <= 12,
// n <= 4); throws std::invalid_argument beyond that.
BoundVector brute_force_bounds(const RankDistribution& dist,
                               const std::vector<std::int64_t>& capacities,
                               BoundObjective objective);

// Deterministic placement of an already-admitted batch: packets in
// (rank, id) order fill queue 1 up to its capacity, then queue 2, and so
// on. `bound` is the highest rank placed in the queue (previous bound if
// empty) and `spill_id` the id of the first same-rank packet carried
// into the next queue, when the boundary rank straddles two queues.
struct QueueAssignment {
  std::vector<Packet> packets;
  int bound = -1;
  std::optional<std::int64_t> spill_id;
};

std::vector<QueueAssignment> batch_map(
    const std::vector<Packet>& admitted,
    const std::vector<std::int64_t>& capacities);

}  // namespace packsched
