#include "packsched/queueing.hpp"

#include <cassert>

namespace packsched {

bool BoundedFifoQueue::try_push(const Packet& pkt) {
  if (full()) {
    return false;
  }
  items_.push_back(pkt);
  return true;
}

std::optional<Packet> BoundedFifoQueue::pop() {
  if (items_.empty()) {
    return std::nullopt;
  }
  Packet pkt = items_.front();
  items_.pop_front();
  return pkt;
}

QueueBank::QueueBank(const std::vector<std::int64_t>& capacities) {
  assert(!capacities.empty());
  queues_.reserve(capacities.size());
  for (std::int64_t cap : capacities) {
    queues_.emplace_back(cap);
  }
}

bool QueueBank::enqueue(int queue, const Packet& pkt) {
  assert(queue >= 0 && queue < count());
  if (!queues_[queue].try_push(pkt)) {
    return false;
  }
  ++occupancy_;
  return true;
}

std::optional<Packet> QueueBank::dequeue() {
  for (BoundedFifoQueue& q : queues_) {
    if (!q.empty()) {
      --occupancy_;
      return q.pop();
    }
  }
  return std::nullopt;
}

PifoBuffer::OfferResult PifoBuffer::offer(const Packet& pkt) {
  OfferResult result;
  const Key key{pkt.rank, pkt.id};
  if (size() < capacity_) {
    items_.emplace(key, pkt);
    result.accepted = true;
    return result;
  }
  if (items_.empty()) {
    return result;  // zero capacity: nothing to displace
  }
  auto worst = std::prev(items_.end());
  if (key < worst->first) {
    result.evicted = worst->second;
    items_.erase(worst);
    items_.emplace(key, pkt);
    result.accepted = true;
  }
  return result;
}

std::optional<Packet> PifoBuffer::dequeue() {
  if (items_.empty()) {
    return std::nullopt;
  }
  Packet pkt = items_.begin()->second;
  items_.erase(items_.begin());
  return pkt;
}

std::vector<Packet> PifoBuffer::contents() const {
  std::vector<Packet> out;
  out.reserve(items_.size());
  for (const auto& [key, pkt] : items_) {
    out.push_back(pkt);
  }
  return out;
}

}  // namespace packsched
