// The scheduling policies under study. Each one reacts to a packet
// arrival (admit into some queue or drop) and to a service opportunity
// (hand over the next packet to the link).

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "packsched/model.hpp"
#include "packsched/queueing.hpp"
#include "packsched/window.hpp"

namespace packsched {

enum class SchedulerKind { Fifo, Aifo, SpPifo, Packs, Pifo };

const char* scheduler_kind_name(SchedulerKind kind);
SchedulerKind scheduler_kind_from_name(const std::string& name);

enum class DropReason {
  AdmissionReject,  // refused because of its rank
  QueueFull,        // admissible, but the target queue had no room
  Evicted,          // admitted earlier, displaced by a better arrival
};

const char* drop_reason_name(DropReason reason);

struct ArrivalDecision {
  bool enqueued = false;
  int queue_index = 0;  // 1-based when enqueued, 0 otherwise
  DropReason reason = DropReason::AdmissionReject;
  std::optional<Packet> evicted;  // displaced victim (ideal buffer only)
};

// Behavioural switches that are not part of the core configuration.
struct SchedulerOptions {
  // SP-PIFO: freeze the queue bounds instead of adapting them.
  bool sppifo_adaptive = true;
  // SP-PIFO: initial (static mode: permanent) bounds; defaults to all 0.
  std::optional<std::vector<std::int64_t>> sppifo_bounds;
  // AIFO: bypass the quantile test with a fixed cutoff (admit rank < t).
  std::optional<int> aifo_fixed_threshold;
  // Window policies: when false, only admitted packets enter the window.
  bool window_include_dropped = true;
};

class Scheduler {
 public:
  virtual ~Scheduler() = default;
  virtual SchedulerKind kind() const = 0;
  virtual ArrivalDecision on_arrival(const Packet& pkt) = 0;
  virtual std::optional<Packet> on_service() = 0;
  virtual std::int64_t occupancy() const = 0;
};

// Single FIFO queue with tail drop. Uses the summed capacity of
// `config.capacities` as its buffer size.
class FifoScheduler : public Scheduler {
 public:
  explicit FifoScheduler(const SchedulerConfig& config);
  SchedulerKind kind() const override { return SchedulerKind::Fifo; }
  ArrivalDecision on_arrival(const Packet& pkt) override;
  std::optional<Packet> on_service() override;
  std::int64_t occupancy() const override { return queue_.size(); }

 private:
  BoundedFifoQueue queue_;
};

// Single FIFO queue guarded by a quantile admission test: admit when the
// window quantile of the rank stays within the occupancy-scaled share of
// the buffer, with slack 1/(1-k).
class AifoScheduler : public Scheduler {
 public:
  AifoScheduler(const SchedulerConfig& config, const SchedulerOptions& options);
  SchedulerKind kind() const override { return SchedulerKind::Aifo; }
  ArrivalDecision on_arrival(const Packet& pkt) override;
  std::optional<Packet> on_service() override;
  std::int64_t occupancy() const override { return queue_.size(); }
  SlidingWindow& window() { return window_; }

 private:
  BoundedFifoQueue queue_;
  SlidingWindow window_;
  double burstiness_;
  std::optional<int> fixed_threshold_;
  bool window_include_dropped_;
};

// Strict-priority bank with per-queue rank bounds. Arrivals scan the
// bounds bottom-up and join the first queue whose bound does not exceed
// their rank; in adaptive mode the bounds chase the observed ranks
// (push-up on enqueue, push-down on a low-rank mapping to queue 1).
class SpPifoScheduler : public Scheduler {
 public:
  SpPifoScheduler(const SchedulerConfig& config, const SchedulerOptions& options);
  SchedulerKind kind() const override { return SchedulerKind::SpPifo; }
  ArrivalDecision on_arrival(const Packet& pkt) override;
  std::optional<Packet> on_service() override;
  std::int64_t occupancy() const override { return bank_.occupancy(); }
  const std::vector<std::int64_t>& bounds() const { return bounds_; }

 private:
  QueueBank bank_;
  std::vector<std::int64_t> bounds_;  // bounds_[i] guards queue i (0-based)
  bool adaptive_;
};

// Window-based admission onto a strict-priority bank: an arrival joins
// the highest-priority queue i whose prefix capacity can still cover the
// rank's window quantile, scaled by the free share of the buffer.
class PacksScheduler : public Scheduler {
 public:
  PacksScheduler(const SchedulerConfig& config, const SchedulerOptions& options);
  SchedulerKind kind() const override { return SchedulerKind::Packs; }
  ArrivalDecision on_arrival(const Packet& pkt) override;
  std::optional<Packet> on_service() override;
  std::int64_t occupancy() const override { return bank_.occupancy(); }
  SlidingWindow& window() { return window_; }

 private:
  QueueBank bank_;
  SlidingWindow window_;
  std::vector<std::int64_t> prefix_capacity_;  // B_1 + ... + B_i
  std::int64_t total_capacity_;
  double burstiness_;
  bool window_include_dropped_;
};

// Idealized reference: one buffer sorted by (rank, id), served lowest
// first, worst packet evicted on overflow.
class PifoScheduler : public Scheduler {
 public:
  explicit PifoScheduler(const SchedulerConfig& config);
  SchedulerKind kind() const override { return SchedulerKind::Pifo; }
  ArrivalDecision on_arrival(const Packet& pkt) override;
  std::optional<Packet> on_service() override;
  std::int64_t occupancy() const override { return buffer_.size(); }
  const PifoBuffer& buffer() const { return buffer_; }

 private:
  PifoBuffer buffer_;
};

// The shared admission predicate: window-quantile(rank) <= 1/(1-k) *
// (capacity - occupancy)/capacity * prefix_capacity/capacity, evaluated
// without division so that k = 0 compares exactly.
bool rank_admissible(std::int64_t count_below, std::int64_t fill,
                     std::int64_t total_capacity, std::int64_t occupancy,
                     std::int64_t prefix_capacity, double burstiness);

// Validates `config` (throws std::invalid_argument on problems) and
// constructs the requested policy.
std::unique_ptr<Scheduler> make_scheduler(SchedulerKind kind,
                                          const SchedulerConfig& config,
                                          const SchedulerOptions& options = {});

}  // namespace packsched
