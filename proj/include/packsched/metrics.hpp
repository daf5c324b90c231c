// Trace post-processing: inversion and drop histograms, forwarding
// rates, divergence between two runs, and per-flow throughput series.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "packsched/simulator.hpp"

namespace packsched {

// Simple per-rank counter, indexed 0..max_rank.
struct RankHistogram {
  std::vector<std::int64_t> counts;

  std::int64_t total() const;
};

// histogram[r] counts departures of rank-r packets that left while some
// strictly lower rank was still buffered (one count per departure, found
// by replaying the buffered set from the trace). Throws on traces whose
// event order is inconsistent.
RankHistogram inversions_per_rank(const Trace& trace);

// All drops by packet rank, whatever the reason.
RankHistogram drops_per_rank(const Trace& trace);

// Lowest rank with at least one drop; nullopt when nothing was dropped.
std::optional<int> min_dropped_rank(const Trace& trace);

// Per-rank arrival/forward/drop/inversion counts in one table; the
// usual CSV payload.
struct PerRankTable {
  std::vector<std::int64_t> arrived;
  std::vector<std::int64_t> forwarded;
  std::vector<std::int64_t> dropped;
  std::vector<std::int64_t> inversions;
};

PerRankTable per_rank_table(const Trace& trace);

// forwarded(r) / arrived(r); ranks that never arrived report nullopt.
std::vector<std::optional<double>> per_rank_rates(const Trace& trace);

// Fraction of packets forwarded by exactly one of the two runs among all
// forwarded up to and including `up_to_tick`:
// |F_a xor F_b| / (|F_a| + |F_b|), 0 when neither forwarded anything.
// The two traces must stem from the identical arrival stream.
double delta_vs(const Trace& a, const Trace& b, std::int64_t up_to_tick);

// Departure counts per flow in consecutive buckets of `bucket_ticks`
// ticks. Flows are keyed by flow id; untagged packets fall under
// kNoFlow.
std::map<int, std::vector<std::int64_t>> flow_throughput(
    const Trace& trace, std::int64_t bucket_ticks);

// Headline numbers for one run.
struct TraceSummary {
  std::int64_t arrived = 0;
  std::int64_t forwarded = 0;
  std::int64_t dropped = 0;
  std::int64_t inversions = 0;
  std::optional<int> min_dropped_rank;
};

TraceSummary summarize(const Trace& trace);

}  // namespace packsched
