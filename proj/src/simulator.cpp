#include "packsched/simulator.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "packsched/distribution.hpp"

namespace packsched {

const char* event_kind_name(EventKind kind) {
  switch (kind) {
    case EventKind::Arrival:
      return "arrival";
    case EventKind::Enqueue:
      return "enqueue";
    case EventKind::Drop:
      return "drop";
    case EventKind::Depart:
      return "depart";
  }
  return "?";
}

namespace {

void require_valid_workload(const WorkloadSpec& spec) {
  const std::vector<std::string> problems = validate_workload(spec);
  if (!problems.empty()) {
    std::ostringstream msg;
    msg << "invalid workload:";
    for (const std::string& p : problems) {
      msg << " " << p << ";";
    }
    throw std::invalid_argument(msg.str());
  }
}

SimEvent packet_event(EventKind kind, std::int64_t tick, const Packet& pkt) {
  SimEvent ev;
  ev.tick = tick;
  ev.kind = kind;
  ev.packet_id = pkt.id;
  ev.rank = pkt.rank;
  ev.flow_id = pkt.flow_id;
  return ev;
}

}  // namespace

std::vector<Packet> generate_arrivals(const WorkloadSpec& spec, int max_rank,
                                      std::uint64_t seed) {
  require_valid_workload(spec);
  std::vector<Packet> arrivals;
  if (spec.flows.empty()) {
    const RankDistribution dist =
        make_distribution(spec.distribution, max_rank);
    const RankSampler sampler(dist);
    Rng rng(seed);
    arrivals.reserve(spec.total_arrivals);
    for (std::int64_t i = 0; i < spec.total_arrivals; ++i) {
      Packet pkt;
      pkt.id = i;
      pkt.rank = sampler.sample(rng);
      pkt.arrival_tick = i * spec.arrival_period;
      arrivals.push_back(pkt);
    }
    return arrivals;
  }

  // Flow mode: expand every flow's periodic schedule, then interleave by
  // (tick, flow id) so simultaneous arrivals have a fixed order.
  for (const FlowSpec& flow : spec.flows) {
    for (std::int64_t t = flow.start_tick; t < flow.stop_tick;
         t += flow.arrival_period) {
      Packet pkt;
      pkt.rank = flow.rank;
      pkt.arrival_tick = t;
      pkt.flow_id = flow.flow_id;
      arrivals.push_back(pkt);
    }
  }
  std::sort(arrivals.begin(), arrivals.end(),
            [](const Packet& a, const Packet& b) {
              if (a.arrival_tick != b.arrival_tick) {
                return a.arrival_tick < b.arrival_tick;
              }
              return a.flow_id < b.flow_id;
            });
  for (std::size_t i = 0; i < arrivals.size(); ++i) {
    arrivals[i].id = static_cast<std::int64_t>(i);
  }
  return arrivals;
}

Trace run_with_arrivals(const SchedulerConfig& config,
                        const WorkloadSpec& workload, SchedulerKind kind,
                        std::uint64_t seed, const std::vector<Packet>& arrivals,
                        const SchedulerOptions& options) {
  require_valid_workload(workload);
  for (std::size_t i = 1; i < arrivals.size(); ++i) {
    if (arrivals[i].arrival_tick < arrivals[i - 1].arrival_tick) {
      throw std::invalid_argument("arrivals must be sorted by tick");
    }
  }
  std::unique_ptr<Scheduler> scheduler = make_scheduler(kind, config, options);

  Trace trace;
  trace.scheduler = kind;
  trace.config = config;
  trace.workload = workload;
  trace.options = options;
  trace.seed = seed;
  trace.events.reserve(arrivals.size() * 3);

  const std::int64_t period = workload.departure_period;
  std::size_t next = 0;
  std::int64_t tick = 0;
  while (next < arrivals.size() || scheduler->occupancy() > 0) {
    // Idle stretch with an empty buffer: nothing can happen until the
    // next arrival, so jump straight to it.
    if (scheduler->occupancy() == 0 && next < arrivals.size() &&
        arrivals[next].arrival_tick > tick) {
      tick = arrivals[next].arrival_tick;
    }
    // Service first: the link takes its packet before this tick's
    // arrivals are considered.
    if (tick % period == 0) {
      if (std::optional<Packet> sent = scheduler->on_service()) {
        trace.events.push_back(packet_event(EventKind::Depart, tick, *sent));
      }
    }
    while (next < arrivals.size() && arrivals[next].arrival_tick == tick) {
      const Packet& pkt = arrivals[next];
      trace.events.push_back(packet_event(EventKind::Arrival, tick, pkt));
      const ArrivalDecision decision = scheduler->on_arrival(pkt);
      if (decision.enqueued) {
        if (decision.evicted) {
          SimEvent ev = packet_event(EventKind::Drop, tick, *decision.evicted);
          ev.reason = DropReason::Evicted;
          trace.events.push_back(ev);
        }
        SimEvent ev = packet_event(EventKind::Enqueue, tick, pkt);
        ev.queue_index = decision.queue_index;
        trace.events.push_back(ev);
      } else {
        SimEvent ev = packet_event(EventKind::Drop, tick, pkt);
        ev.reason = decision.reason;
        trace.events.push_back(ev);
      }
      ++next;
    }
    ++tick;
  }
  return trace;
}

Trace run_scenario(const SchedulerConfig& config, const WorkloadSpec& workload,
                   SchedulerKind kind, std::uint64_t seed,
                   const SchedulerOptions& options) {
  const std::vector<Packet> arrivals =
      generate_arrivals(workload, config.max_rank, seed);
  return run_with_arrivals(config, workload, kind, seed, arrivals, options);
}

std::map<SchedulerKind, Trace> run_comparison(
    const SchedulerConfig& config, const WorkloadSpec& workload,
    const std::vector<SchedulerKind>& kinds, std::uint64_t seed,
    const SchedulerOptions& options) {
  const std::vector<Packet> arrivals =
      generate_arrivals(workload, config.max_rank, seed);
  std::map<SchedulerKind, Trace> traces;
  for (SchedulerKind kind : kinds) {
    traces.emplace(kind, run_with_arrivals(config, workload, kind, seed,
                                           arrivals, options));
  }
  return traces;
}

std::vector<std::string> validate_trace(const Trace& trace) {
  std::vector<std::string> problems;
  constexpr std::size_t kMaxProblems = 20;
  const auto report = [&](const std::string& msg) {
    if (problems.size() < kMaxProblems) {
      problems.push_back(msg);
    }
  };

  enum class State : std::uint8_t {
    Arrived,
    Queued,
    DroppedOnArrival,
    Evicted,
    Departed,
  };
  struct PacketState {
    State state = State::Arrived;
    int rank = 0;
  };

  std::vector<PacketState> packets;
  std::int64_t next_arrival_id = 0;
  std::int64_t prev_tick = 0;
  std::int64_t occupancy = 0;
  const std::int64_t capacity = trace.config.total_capacity();
  const std::int64_t period = trace.workload.departure_period;
  const int max_rank = trace.config.max_rank;

  std::vector<std::int64_t> arrived_by_rank(max_rank + 1, 0);
  std::vector<std::int64_t> left_by_rank(max_rank + 1, 0);  // departed+dropped

  // Work conservation needs the occupancy just before each service
  // opportunity; track the tick of the last seen Depart to catch both a
  // missing and a spurious service.
  std::size_t index = 0;
  std::int64_t next_service = 0;

  const auto note_tick = [&](std::int64_t tick) {
    if (tick < prev_tick) {
      report("event ticks go backwards at index " + std::to_string(index));
    }
    prev_tick = tick;
  };

  for (index = 0; index < trace.events.size(); ++index) {
    const SimEvent& ev = trace.events[index];
    note_tick(ev.tick);
    if (ev.rank < 0 || ev.rank > max_rank) {
      report("event rank out of range at index " + std::to_string(index));
      continue;
    }

    // Work conservation: every service opportunity strictly before this
    // event's tick found the buffer in its current state.
    while (next_service < ev.tick) {
      if (occupancy > 0) {
        report("no departure at busy service tick " +
               std::to_string(next_service));
      }
      next_service += period;
    }
    // A service opportunity on this very tick fires before the tick's
    // arrivals, so it saw the buffer as it stands right now. If the
    // event is not the departure itself, the opportunity passed without
    // one, which is only legal with an empty buffer.
    if (next_service == ev.tick && ev.kind != EventKind::Depart) {
      if (occupancy > 0) {
        report("no departure at busy service tick " +
               std::to_string(next_service));
      }
      next_service += period;
    }

    const std::int64_t id = ev.packet_id;
    switch (ev.kind) {
      case EventKind::Arrival:
        if (id != next_arrival_id) {
          report("arrival ids not consecutive at id " + std::to_string(id));
        }
        ++next_arrival_id;
        if (static_cast<std::int64_t>(packets.size()) <= id) {
          packets.resize(id + 1);
        }
        packets[id].state = State::Arrived;
        packets[id].rank = ev.rank;
        ++arrived_by_rank[ev.rank];
        break;
      case EventKind::Enqueue:
        if (id >= static_cast<std::int64_t>(packets.size()) ||
            packets[id].state != State::Arrived) {
          report("enqueue without pending arrival for id " +
                 std::to_string(id));
          break;
        }
        if (ev.queue_index < 1 || ev.queue_index > trace.config.queue_count) {
          report("enqueue into invalid queue for id " + std::to_string(id));
        }
        packets[id].state = State::Queued;
        ++occupancy;
        if (occupancy > capacity) {
          report("occupancy exceeds capacity at tick " +
                 std::to_string(ev.tick));
        }
        break;
      case EventKind::Drop:
        if (id >= static_cast<std::int64_t>(packets.size())) {
          report("drop of unknown id " + std::to_string(id));
          break;
        }
        if (ev.reason == DropReason::Evicted) {
          if (packets[id].state != State::Queued) {
            report("eviction of non-buffered id " + std::to_string(id));
            break;
          }
          packets[id].state = State::Evicted;
          --occupancy;
        } else {
          if (packets[id].state != State::Arrived) {
            report("drop without pending arrival for id " +
                   std::to_string(id));
            break;
          }
          packets[id].state = State::DroppedOnArrival;
        }
        ++left_by_rank[ev.rank];
        break;
      case EventKind::Depart:
        if (ev.tick != next_service) {
          report("departure off the service grid at tick " +
                 std::to_string(ev.tick));
        } else {
          next_service += period;
        }
        if (id >= static_cast<std::int64_t>(packets.size()) ||
            packets[id].state != State::Queued) {
          report("departure of non-buffered id " + std::to_string(id));
          break;
        }
        packets[id].state = State::Departed;
        --occupancy;
        ++left_by_rank[ev.rank];
        break;
    }
  }

  // Terminal accounting: arrivals must be resolved, and per rank the
  // departures, drops and leftovers must add back up to the arrivals.
  std::vector<std::int64_t> residual_by_rank(max_rank + 1, 0);
  for (std::size_t id = 0; id < packets.size(); ++id) {
    if (packets[id].state == State::Arrived) {
      report("arrival never resolved for id " + std::to_string(id));
    } else if (packets[id].state == State::Queued) {
      ++residual_by_rank[packets[id].rank];
    }
  }
  for (int r = 0; r <= max_rank; ++r) {
    if (arrived_by_rank[r] != left_by_rank[r] + residual_by_rank[r]) {
      report("rank " + std::to_string(r) +
             " packets do not balance: arrived " +
             std::to_string(arrived_by_rank[r]) + ", resolved " +
             std::to_string(left_by_rank[r] + residual_by_rank[r]));
    }
  }
  return problems;
}

}  // namespace packsched
