#include "packsched/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace packsched {

namespace {

// Fenwick tree over ranks; supports "how many buffered packets have a
// rank strictly below r" in O(log max_rank).
class RankCounter {
 public:
  explicit RankCounter(int max_rank) : tree_(max_rank + 2, 0) {}

  void add(int rank, std::int64_t delta) {
    for (int i = rank + 1; i < static_cast<int>(tree_.size()); i += i & -i) {
      tree_[i] += delta;
    }
  }

  std::int64_t count_below(int rank) const {
    std::int64_t sum = 0;
    for (int i = rank; i > 0; i -= i & -i) {
      sum += tree_[i];
    }
    return sum;
  }

 private:
  std::vector<std::int64_t> tree_;
};

void check_rank(const Trace& trace, int rank) {
  if (rank < 0 || rank > trace.config.max_rank) {
    throw std::runtime_error("trace contains an out-of-range rank");
  }
}

}  // namespace

std::int64_t RankHistogram::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

RankHistogram inversions_per_rank(const Trace& trace) {
  const int max_rank = trace.config.max_rank;
  RankHistogram hist;
  hist.counts.assign(max_rank + 1, 0);
  RankCounter buffered(max_rank);
  std::vector<std::int64_t> per_rank(max_rank + 1, 0);

  for (const SimEvent& ev : trace.events) {
    check_rank(trace, ev.rank);
    switch (ev.kind) {
      case EventKind::Arrival:
        break;
      case EventKind::Enqueue:
        buffered.add(ev.rank, 1);
        ++per_rank[ev.rank];
        break;
      case EventKind::Drop:
        if (ev.reason == DropReason::Evicted) {
          if (per_rank[ev.rank] == 0) {
            throw std::runtime_error("eviction of a packet never enqueued");
          }
          buffered.add(ev.rank, -1);
          --per_rank[ev.rank];
        }
        break;
      case EventKind::Depart:
        if (per_rank[ev.rank] == 0) {
          throw std::runtime_error("departure of a packet never enqueued");
        }
        buffered.add(ev.rank, -1);
        --per_rank[ev.rank];
        // A departure is inverted when something more urgent stayed
        // behind in the buffer.
        if (buffered.count_below(ev.rank) > 0) {
          ++hist.counts[ev.rank];
        }
        break;
    }
  }
  return hist;
}

RankHistogram drops_per_rank(const Trace& trace) {
  RankHistogram hist;
  hist.counts.assign(trace.config.max_rank + 1, 0);
  for (const SimEvent& ev : trace.events) {
    if (ev.kind == EventKind::Drop) {
      check_rank(trace, ev.rank);
      ++hist.counts[ev.rank];
    }
  }
  return hist;
}

std::optional<int> min_dropped_rank(const Trace& trace) {
  const RankHistogram hist = drops_per_rank(trace);
  for (int r = 0; r < static_cast<int>(hist.counts.size()); ++r) {
    if (hist.counts[r] > 0) {
      return r;
    }
  }
  return std::nullopt;
}

PerRankTable per_rank_table(const Trace& trace) {
  const int size = trace.config.max_rank + 1;
  PerRankTable table;
  table.arrived.assign(size, 0);
  table.forwarded.assign(size, 0);
  table.dropped.assign(size, 0);
  for (const SimEvent& ev : trace.events) {
    check_rank(trace, ev.rank);
    switch (ev.kind) {
      case EventKind::Arrival:
        ++table.arrived[ev.rank];
        break;
      case EventKind::Depart:
        ++table.forwarded[ev.rank];
        break;
      case EventKind::Drop:
        ++table.dropped[ev.rank];
        break;
      case EventKind::Enqueue:
        break;
    }
  }
  table.inversions = inversions_per_rank(trace).counts;
  return table;
}

std::vector<std::optional<double>> per_rank_rates(const Trace& trace) {
  const PerRankTable table = per_rank_table(trace);
  std::vector<std::optional<double>> rates(table.arrived.size());
  for (std::size_t r = 0; r < table.arrived.size(); ++r) {
    if (table.arrived[r] > 0) {
      rates[r] = static_cast<double>(table.forwarded[r]) /
                 static_cast<double>(table.arrived[r]);
    }
  }
  return rates;
}

double delta_vs(const Trace& a, const Trace& b, std::int64_t up_to_tick) {
  // Forwarded-set comparisons only make sense over one arrival stream.
  std::size_t ia = 0;
  std::size_t ib = 0;
  std::int64_t arrivals = 0;
  while (true) {
    while (ia < a.events.size() && a.events[ia].kind != EventKind::Arrival) {
      ++ia;
    }
    while (ib < b.events.size() && b.events[ib].kind != EventKind::Arrival) {
      ++ib;
    }
    const bool ea = ia == a.events.size();
    const bool eb = ib == b.events.size();
    if (ea || eb) {
      if (ea != eb) {
        throw std::invalid_argument("traces have different arrival streams");
      }
      break;
    }
    const SimEvent& x = a.events[ia];
    const SimEvent& y = b.events[ib];
    if (x.packet_id != y.packet_id || x.tick != y.tick || x.rank != y.rank ||
        x.flow_id != y.flow_id) {
      throw std::invalid_argument("traces have different arrival streams");
    }
    ++arrivals;
    ++ia;
    ++ib;
  }

  std::vector<char> fa(arrivals, 0);
  std::vector<char> fb(arrivals, 0);
  std::int64_t na = 0;
  std::int64_t nb = 0;
  for (const SimEvent& ev : a.events) {
    if (ev.kind == EventKind::Depart && ev.tick <= up_to_tick) {
      fa[ev.packet_id] = 1;
      ++na;
    }
  }
  for (const SimEvent& ev : b.events) {
    if (ev.kind == EventKind::Depart && ev.tick <= up_to_tick) {
      fb[ev.packet_id] = 1;
      ++nb;
    }
  }
  if (na + nb == 0) {
    return 0.0;
  }
  std::int64_t mismatched = 0;
  for (std::int64_t i = 0; i < arrivals; ++i) {
    if (fa[i] != fb[i]) {
      ++mismatched;
    }
  }
  return static_cast<double>(mismatched) / static_cast<double>(na + nb);
}

std::map<int, std::vector<std::int64_t>> flow_throughput(
    const Trace& trace, std::int64_t bucket_ticks) {
  if (bucket_ticks < 1) {
    throw std::invalid_argument("bucket_ticks must be positive");
  }
  std::int64_t last_tick = 0;
  for (const SimEvent& ev : trace.events) {
    last_tick = std::max(last_tick, ev.tick);
  }
  const std::size_t buckets =
      static_cast<std::size_t>(last_tick / bucket_ticks) + 1;

  std::map<int, std::vector<std::int64_t>> series;
  // Every flow that ever arrived gets a row, even if it never departed.
  for (const SimEvent& ev : trace.events) {
    if (ev.kind == EventKind::Arrival) {
      series.try_emplace(ev.flow_id, buckets, 0);
    }
  }
  for (const SimEvent& ev : trace.events) {
    if (ev.kind == EventKind::Depart) {
      auto it = series.try_emplace(ev.flow_id, buckets, 0).first;
      it->second[ev.tick / bucket_ticks] += 1;
    }
  }
  return series;
}

TraceSummary summarize(const Trace& trace) {
  TraceSummary summary;
  const PerRankTable table = per_rank_table(trace);
  for (std::size_t r = 0; r < table.arrived.size(); ++r) {
    summary.arrived += table.arrived[r];
    summary.forwarded += table.forwarded[r];
    summary.dropped += table.dropped[r];
    summary.inversions += table.inversions[r];
    if (!summary.min_dropped_rank && table.dropped[r] > 0) {
      summary.min_dropped_rank = static_cast<int>(r);
    }
  }
  return summary;
}

}  // namespace packsched
