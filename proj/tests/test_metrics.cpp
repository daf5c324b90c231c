// Metric extraction from traces: inversions, drop histograms, forwarding
// rates, run divergence, flow throughput, and the headline summary.

#include <optional>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "packsched/metrics.hpp"
#include "packsched/simulator.hpp"
#include "support.hpp"

using namespace packsched;
using testsup::make_config;
using testsup::make_packet;
using testsup::make_workload;

namespace {

SimEvent event(EventKind kind, int rank, std::int64_t id, std::int64_t tick,
               DropReason reason = DropReason::AdmissionReject) {
  SimEvent ev;
  ev.kind = kind;
  ev.rank = rank;
  ev.packet_id = id;
  ev.tick = tick;
  ev.reason = reason;
  return ev;
}

Trace burst_trace(SchedulerKind kind, const SchedulerOptions& options = {}) {
  const std::vector<int> ranks = {1, 4, 5, 2, 1, 2};
  std::vector<Packet> arrivals;
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    arrivals.push_back(make_packet(static_cast<std::int64_t>(i), ranks[i],
                                   static_cast<std::int64_t>(i)));
  }
  const WorkloadSpec workload = make_workload(DistKind::Uniform, 6, 1, 100);
  const std::vector<std::int64_t> capacities =
      (kind == SchedulerKind::SpPifo || kind == SchedulerKind::Packs)
          ? std::vector<std::int64_t>{2, 2}
          : std::vector<std::int64_t>{4};
  return run_with_arrivals(make_config(capacities), workload, kind, 0, arrivals,
                           options);
}

}  // namespace

// ===== inversions =====

TEST_CASE("a departure counts as inverted when lower ranks stay behind") {
  Trace trace;
  trace.config = make_config({4}, 8, 5);
  auto& ev = trace.events;
  ev.push_back(event(EventKind::Enqueue, 3, 0, 0));
  ev.push_back(event(EventKind::Enqueue, 1, 1, 1));
  ev.push_back(event(EventKind::Depart, 3, 0, 2));  // rank 1 left behind
  ev.push_back(event(EventKind::Depart, 1, 1, 3));
  ev.push_back(event(EventKind::Enqueue, 2, 2, 4));
  ev.push_back(event(EventKind::Enqueue, 2, 3, 5));
  ev.push_back(event(EventKind::Depart, 2, 2, 6));  // equal rank: no inversion
  ev.push_back(event(EventKind::Depart, 2, 3, 7));

  const RankHistogram hist = inversions_per_rank(trace);
  CHECK(hist.total() == 1);
  CHECK(hist.counts[3] == 1);
  CHECK(hist.counts[2] == 0);
}

TEST_CASE("evicted packets leave the buffered set before the comparison") {
  Trace trace;
  trace.config = make_config({4}, 8, 5);
  auto& ev = trace.events;
  ev.push_back(event(EventKind::Enqueue, 0, 0, 0));
  ev.push_back(event(EventKind::Enqueue, 5, 1, 1));
  ev.push_back(event(EventKind::Drop, 0, 0, 2, DropReason::Evicted));
  ev.push_back(event(EventKind::Depart, 5, 1, 3));  // nothing lower remains

  CHECK(inversions_per_rank(trace).total() == 0);
}

TEST_CASE("structurally impossible traces are refused") {
  Trace trace;
  trace.config = make_config({4}, 8, 5);
  SUBCASE("departure of a packet never enqueued") {
    trace.events.push_back(event(EventKind::Depart, 4, 0, 0));
    CHECK_THROWS_AS(inversions_per_rank(trace), std::runtime_error);
  }
  SUBCASE("rank above the configured maximum") {
    trace.events.push_back(event(EventKind::Enqueue, 9, 0, 0));
    CHECK_THROWS_AS(inversions_per_rank(trace), std::runtime_error);
  }
  SUBCASE("eviction of a packet never enqueued") {
    trace.events.push_back(event(EventKind::Drop, 4, 0, 0, DropReason::Evicted));
    CHECK_THROWS_AS(inversions_per_rank(trace), std::runtime_error);
  }
}

TEST_CASE("burst inversions per scheduler") {
  SUBCASE("fifo serves two high ranks past buffered lower ones") {
    const RankHistogram hist = inversions_per_rank(burst_trace(SchedulerKind::Fifo));
    CHECK(hist.total() == 2);
    CHECK(hist.counts[4] == 1);
    CHECK(hist.counts[5] == 1);
  }
  SUBCASE("the ideal buffer never inverts") {
    CHECK(inversions_per_rank(burst_trace(SchedulerKind::Pifo)).total() == 0);
  }
  SUBCASE("static bounds happen to order this burst perfectly") {
    SchedulerOptions options;
    options.sppifo_adaptive = false;
    options.sppifo_bounds = std::vector<std::int64_t>{1, 2};
    CHECK(inversions_per_rank(burst_trace(SchedulerKind::SpPifo, options))
              .total() == 0);
  }
  SUBCASE("aifo keeps fifo order among the admitted") {
    const RankHistogram hist = inversions_per_rank(burst_trace(SchedulerKind::Aifo));
    CHECK(hist.total() == 2);
    CHECK(hist.counts[2] == 1);
    CHECK(hist.counts[4] == 1);
  }
  SUBCASE("packs trades one fifo inversion for a cross-queue one") {
    const RankHistogram hist =
        inversions_per_rank(burst_trace(SchedulerKind::Packs));
    CHECK(hist.total() == 2);
    CHECK(hist.counts[2] == 1);
    CHECK(hist.counts[4] == 1);
  }
}

// ===== drops and rates =====

TEST_CASE("drop histograms and the minimum dropped rank") {
  const Trace fifo = burst_trace(SchedulerKind::Fifo);
  const RankHistogram drops = drops_per_rank(fifo);
  CHECK(drops.total() == 2);
  CHECK(drops.counts[1] == 1);
  CHECK(drops.counts[2] == 1);
  CHECK(min_dropped_rank(fifo) == 1);

  CHECK(min_dropped_rank(burst_trace(SchedulerKind::Pifo)) == 4);

  Trace empty;
  empty.config = make_config({4});
  CHECK(!min_dropped_rank(empty).has_value());
}

TEST_CASE("the per-rank table balances arrivals against outcomes") {
  const Trace trace = burst_trace(SchedulerKind::Fifo);
  const PerRankTable table = per_rank_table(trace);
  CHECK(table.arrived[1] == 2);
  CHECK(table.forwarded[1] == 1);
  CHECK(table.dropped[1] == 1);
  CHECK(table.arrived[4] == 1);
  CHECK(table.forwarded[4] == 1);
  for (std::size_t r = 0; r < table.arrived.size(); ++r) {
    CHECK(table.arrived[r] == table.forwarded[r] + table.dropped[r]);
  }

  const auto rates = per_rank_rates(trace);
  CHECK(!rates[0].has_value());
  CHECK(*rates[1] == doctest::Approx(0.5));
  CHECK(*rates[4] == doctest::Approx(1.0));
}

// ===== divergence =====

TEST_CASE("delta compares the forwarded sets of two runs") {
  const Trace fifo = burst_trace(SchedulerKind::Fifo);
  const Trace pifo = burst_trace(SchedulerKind::Pifo);

  SUBCASE("identical runs do not diverge") {
    CHECK(delta_vs(fifo, fifo, 1000) == 0.0);
  }
  SUBCASE("fifo and the ideal buffer disagree on half the burst") {
    // Forwarded ids: {0,1,2,3} vs {0,3,4,5} -> 4 mismatches out of 8.
    CHECK(delta_vs(fifo, pifo, 1000) == doctest::Approx(0.5));
    CHECK(delta_vs(pifo, fifo, 1000) == doctest::Approx(0.5));
  }
  SUBCASE("the cutoff restricts the comparison window") {
    CHECK(delta_vs(fifo, pifo, 150) == 0.0);   // both forwarded only id 0
    CHECK(delta_vs(fifo, pifo, 250) == doctest::Approx(0.5));  // {0,1} vs {0,4}
    CHECK(delta_vs(fifo, pifo, 50) == 0.0);    // nothing forwarded yet
  }
  SUBCASE("different arrival streams are rejected") {
    Trace other = fifo;
    for (SimEvent& ev : other.events) {
      if (ev.kind == EventKind::Arrival) {
        ev.rank += 1;
        break;
      }
    }
    CHECK_THROWS_AS(delta_vs(fifo, other, 1000), std::invalid_argument);

    Trace truncated = fifo;
    while (!truncated.events.empty() &&
           truncated.events.back().kind != EventKind::Arrival) {
      truncated.events.pop_back();
    }
    truncated.events.pop_back();
    CHECK_THROWS_AS(delta_vs(fifo, truncated, 1000), std::invalid_argument);
  }
}

// ===== flow throughput =====

TEST_CASE("throughput buckets count departures per flow") {
  WorkloadSpec spec;
  spec.departure_period = 1;
  FlowSpec f1;
  f1.flow_id = 1;
  f1.rank = 0;
  f1.start_tick = 0;
  f1.stop_tick = 20;
  f1.arrival_period = 2;
  FlowSpec f2;
  f2.flow_id = 2;
  f2.rank = 1;
  f2.start_tick = 0;
  f2.stop_tick = 20;
  f2.arrival_period = 4;
  spec.flows = {f1, f2};

  const Trace trace = run_scenario(make_config({8}), spec, SchedulerKind::Fifo, 0);
  const auto series = flow_throughput(trace, 10);
  REQUIRE(series.size() == 2);
  CHECK(series.at(1) == std::vector<std::int64_t>{5, 5});
  CHECK(series.at(2) == std::vector<std::int64_t>{2, 3});

  CHECK_THROWS_AS(flow_throughput(trace, 0), std::invalid_argument);
}

TEST_CASE("untagged packets fall under the no-flow key") {
  const Trace trace = burst_trace(SchedulerKind::Fifo);
  const auto series = flow_throughput(trace, 100);
  REQUIRE(series.size() == 1);
  REQUIRE(series.count(kNoFlow) == 1);
  std::int64_t total = 0;
  for (std::int64_t n : series.at(kNoFlow)) {
    total += n;
  }
  CHECK(total == 4);
}

// ===== summary =====

TEST_CASE("the summary aggregates the burst correctly") {
  const TraceSummary summary = summarize(burst_trace(SchedulerKind::Fifo));
  CHECK(summary.arrived == 6);
  CHECK(summary.forwarded == 4);
  CHECK(summary.dropped == 2);
  CHECK(summary.inversions == 2);
  CHECK(summary.min_dropped_rank == 1);
}

TEST_CASE("summary totals stay consistent on a long random run") {
  const WorkloadSpec spec = make_workload(DistKind::Uniform, 5000, 4, 5);
  const Trace trace =
      run_scenario(make_config({6, 6}, 24, 30), spec, SchedulerKind::Packs, 13);
  const TraceSummary summary = summarize(trace);
  CHECK(summary.arrived == 5000);
  CHECK(summary.forwarded + summary.dropped == summary.arrived);
  CHECK(summary.inversions == inversions_per_rank(trace).total());
  CHECK(summary.min_dropped_rank == min_dropped_rank(trace));
  CHECK(summary.dropped > 0);  // 4:5 overload must shed load
}
