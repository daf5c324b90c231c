// Discrete-time simulation: generate deterministic arrival streams from
// a workload, replay them through a scheduler, and record everything
// that happened as an event trace.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "packsched/model.hpp"
#include "packsched/scheduler.hpp"

namespace packsched {

enum class EventKind : std::uint8_t { Arrival, Enqueue, Drop, Depart };

const char* event_kind_name(EventKind kind);

struct SimEvent {
  std::int64_t tick = 0;
  std::int64_t packet_id = 0;
  EventKind kind = EventKind::Arrival;
  DropReason reason = DropReason::AdmissionReject;  // Drop events only
  int rank = 0;
  int queue_index = 0;  // 1-based; 0 when not applicable
  int flow_id = kNoFlow;
};

// Complete record of one run, with enough context to recompute any
// metric or reproduce the run bit-for-bit.
struct Trace {
  SchedulerKind scheduler = SchedulerKind::Fifo;
  SchedulerConfig config;
  WorkloadSpec workload;
  SchedulerOptions options;
  std::uint64_t seed = 0;
  std::vector<SimEvent> events;
};

// Expands the workload into a packet stream. Single-source mode emits
// packet i at tick i * arrival_period with a rank sampled from the
// workload distribution; flow mode merges the periodic fixed-rank flows,
// ordered by (tick, flow_id). Ids are consecutive from 0 in stream
// order. Throws std::invalid_argument on an invalid workload.
std::vector<Packet> generate_arrivals(const WorkloadSpec& spec, int max_rank,
                                      std::uint64_t seed);

// Replays `arrivals` through a freshly built scheduler. Each tick first
// offers a service opportunity (every departure_period ticks, starting
// at tick 0), then processes the arrivals due at that tick. After the
// last arrival the buffer is drained to empty. Event order per arrival:
// Arrival, then the eviction Drop if any, then Enqueue or Drop.
Trace run_scenario(const SchedulerConfig& config, const WorkloadSpec& workload,
                   SchedulerKind kind, std::uint64_t seed,
                   const SchedulerOptions& options = {});

// Same replay, but over a caller-supplied arrival stream (used to feed
// several schedulers the identical stream).
Trace run_with_arrivals(const SchedulerConfig& config,
                        const WorkloadSpec& workload, SchedulerKind kind,
                        std::uint64_t seed, const std::vector<Packet>& arrivals,
                        const SchedulerOptions& options = {});

// One shared arrival stream, one trace per requested scheduler.
std::map<SchedulerKind, Trace> run_comparison(
    const SchedulerConfig& config, const WorkloadSpec& workload,
    const std::vector<SchedulerKind>& kinds, std::uint64_t seed,
    const SchedulerOptions& options = {});

// Structural audit of a trace: per-packet lifecycle (arrive, then
// enqueue or drop, evictions only after enqueue, depart at most once),
// consecutive ids, non-decreasing ticks, per-rank conservation
// (arrivals = departures + drops + still buffered), and work
// conservation (no idle service opportunity while packets were
// buffered). Returns problems; empty means the trace is sound.
std::vector<std::string> validate_trace(const Trace& trace);

}  // namespace packsched
