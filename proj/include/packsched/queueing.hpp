// Buffer primitives: a bounded FIFO queue, a strict-priority bank of
// such queues, and an idealized push-in-first-out buffer that keeps its
// contents sorted by (rank, id) and evicts from the tail.

#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "packsched/model.hpp"

namespace packsched {

class BoundedFifoQueue {
 public:
  explicit BoundedFifoQueue(std::int64_t capacity) : capacity_(capacity) {}

  // Appends at the tail; false (tail drop) when full.
  bool try_push(const Packet& pkt);

  // Removes and returns the head, or nullopt when empty.
  std::optional<Packet> pop();

  std::int64_t size() const { return static_cast<std::int64_t>(items_.size()); }
  std::int64_t capacity() const { return capacity_; }
  bool empty() const { return items_.empty(); }
  bool full() const { return size() >= capacity_; }
  const Packet& front() const { return items_.front(); }

 private:
  std::int64_t capacity_;
  std::deque<Packet> items_;
};

// Queues are indexed 0..count-1; lower index is served first (strict
// priority). Queue 0 corresponds to "queue 1" in decision reporting.
class QueueBank {
 public:
  explicit QueueBank(const std::vector<std::int64_t>& capacities);

  // Tail-append into the given queue; false when that queue is full.
  bool enqueue(int queue, const Packet& pkt);

  // Head of the lowest-indexed non-empty queue, or nullopt when idle.
  std::optional<Packet> dequeue();

  int count() const { return static_cast<int>(queues_.size()); }
  std::int64_t occupancy() const { return occupancy_; }
  std::int64_t queue_size(int queue) const { return queues_[queue].size(); }
  const BoundedFifoQueue& queue(int queue) const { return queues_[queue]; }

 private:
  std::vector<BoundedFifoQueue> queues_;
  std::int64_t occupancy_ = 0;
};

// Reference buffer: always holds the lowest-(rank, id) packets seen so
// far that have not left. Offering to a full buffer evicts the current
// maximum if the newcomer beats it, otherwise the newcomer is rejected.
class PifoBuffer {
 public:
  struct OfferResult {
    bool accepted = false;
    std::optional<Packet> evicted;  // set when acceptance displaced a packet
  };

  explicit PifoBuffer(std::int64_t capacity) : capacity_(capacity) {}

  OfferResult offer(const Packet& pkt);

  // Removes and returns the minimum-(rank, id) packet.
  std::optional<Packet> dequeue();

  std::int64_t size() const { return static_cast<std::int64_t>(items_.size()); }
  std::int64_t capacity() const { return capacity_; }
  bool empty() const { return items_.empty(); }

  // Contents in (rank, id) order, for inspection.
  std::vector<Packet> contents() const;

 private:
  using Key = std::pair<int, std::int64_t>;  // (rank, id)
  std::int64_t capacity_;
  std::map<Key, Packet> items_;
};

}  // namespace packsched
