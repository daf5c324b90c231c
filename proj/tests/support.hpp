// Shared helpers for the test binaries: tiny constructors, reference
// models re-implemented the slow and obvious way, and canned configs.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "packsched/model.hpp"
#include "packsched/queueing.hpp"
#include "packsched/scheduler.hpp"
#include "packsched/simulator.hpp"

namespace testsup {

inline packsched::Packet make_packet(std::int64_t id, int rank,
                                     std::int64_t tick = 0,
                                     int flow = packsched::kNoFlow) {
  packsched::Packet pkt;
  pkt.id = id;
  pkt.rank = rank;
  pkt.arrival_tick = tick;
  pkt.flow_id = flow;
  return pkt;
}

inline std::vector<packsched::Packet> make_batch(
    const std::vector<int>& ranks) {
  std::vector<packsched::Packet> batch;
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    batch.push_back(make_packet(static_cast<std::int64_t>(i), ranks[i]));
  }
  return batch;
}

inline packsched::SchedulerConfig make_config(
    const std::vector<std::int64_t>& capacities, int window_size = 8,
    int max_rank = 100, double burstiness = 0.0) {
  packsched::SchedulerConfig config;
  config.queue_count = static_cast<int>(capacities.size());
  config.capacities = capacities;
  config.window_size = window_size;
  config.burstiness = burstiness;
  config.max_rank = max_rank;
  return config;
}

// Reference for SlidingWindow: keeps the last `capacity` pushes in a
// plain vector and counts with a linear scan.
class NaiveWindow {
 public:
  explicit NaiveWindow(int capacity) : capacity_(capacity) {}

  void push(int rank) {
    if (static_cast<int>(entries_.size()) == capacity_) {
      entries_.erase(entries_.begin());
    }
    entries_.push_back(rank);
  }

  std::int64_t count_below(int rank) const {
    std::int64_t n = 0;
    for (int e : entries_) {
      if (e < rank) {
        ++n;
      }
    }
    return n;
  }

  int fill() const { return static_cast<int>(entries_.size()); }

 private:
  int capacity_;
  std::vector<int> entries_;
};

// Reference for PifoBuffer: a plain vector re-sorted after every
// operation, with the same offer/dequeue rules spelled out directly.
class NaivePifo {
 public:
  explicit NaivePifo(std::int64_t capacity) : capacity_(capacity) {}

  struct OfferResult {
    bool accepted = false;
    std::optional<packsched::Packet> evicted;
  };

  OfferResult offer(const packsched::Packet& pkt) {
    OfferResult result;
    sort();
    if (static_cast<std::int64_t>(items_.size()) < capacity_) {
      items_.push_back(pkt);
      result.accepted = true;
      return result;
    }
    if (items_.empty()) {
      return result;
    }
    const packsched::Packet worst = items_.back();
    if (pkt.rank < worst.rank ||
        (pkt.rank == worst.rank && pkt.id < worst.id)) {
      result.evicted = worst;
      items_.pop_back();
      items_.push_back(pkt);
      result.accepted = true;
    }
    return result;
  }

  std::optional<packsched::Packet> dequeue() {
    if (items_.empty()) {
      return std::nullopt;
    }
    sort();
    packsched::Packet pkt = items_.front();
    items_.erase(items_.begin());
    return pkt;
  }

  std::vector<packsched::Packet> contents() {
    sort();
    return items_;
  }

 private:
  void sort() {
    std::sort(items_.begin(), items_.end(),
              [](const packsched::Packet& a, const packsched::Packet& b) {
                if (a.rank != b.rank) return a.rank < b.rank;
                return a.id < b.id;
              });
  }

  std::int64_t capacity_;
  std::vector<packsched::Packet> items_;
};

// Feeds ranks one per tick into a scheduler and returns the decisions.
inline std::vector<packsched::ArrivalDecision> offer_all(
    packsched::Scheduler& scheduler, const std::vector<int>& ranks) {
  std::vector<packsched::ArrivalDecision> decisions;
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    packsched::Packet pkt = make_packet(static_cast<std::int64_t>(i), ranks[i],
                                        static_cast<std::int64_t>(i));
    decisions.push_back(scheduler.on_arrival(pkt));
  }
  return decisions;
}

// Drains a scheduler completely, returning the departed ranks in order.
inline std::vector<int> drain_ranks(packsched::Scheduler& scheduler) {
  std::vector<int> ranks;
  while (auto pkt = scheduler.on_service()) {
    ranks.push_back(pkt->rank);
  }
  return ranks;
}

// Ranks departed by a finished trace, in departure order.
inline std::vector<int> departed_ranks(const packsched::Trace& trace) {
  std::vector<int> ranks;
  for (const packsched::SimEvent& ev : trace.events) {
    if (ev.kind == packsched::EventKind::Depart) {
      ranks.push_back(ev.rank);
    }
  }
  return ranks;
}

// Ranks dropped in a finished trace, in drop order.
inline std::vector<int> dropped_ranks(const packsched::Trace& trace) {
  std::vector<int> ranks;
  for (const packsched::SimEvent& ev : trace.events) {
    if (ev.kind == packsched::EventKind::Drop) {
      ranks.push_back(ev.rank);
    }
  }
  return ranks;
}

// Single-source workload shorthand.
inline packsched::WorkloadSpec make_workload(packsched::DistKind kind,
                                             std::int64_t arrivals,
                                             std::int64_t arrival_period,
                                             std::int64_t departure_period) {
  packsched::WorkloadSpec spec;
  spec.distribution.kind = kind;
  spec.total_arrivals = arrivals;
  spec.arrival_period = arrival_period;
  spec.departure_period = departure_period;
  return spec;
}

}  // namespace testsup
