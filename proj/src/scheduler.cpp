#include "packsched/scheduler.hpp"

#include <cassert>
#include <sstream>
#include <stdexcept>

namespace packsched {

const char* scheduler_kind_name(SchedulerKind kind) {
  switch (kind) {
    case SchedulerKind::Fifo:
      return "fifo";
    case SchedulerKind::Aifo:
      return "aifo";
    case SchedulerKind::SpPifo:
      return "sppifo";
    case SchedulerKind::Packs:
      return "packs";
    case SchedulerKind::Pifo:
      return "pifo";
  }
  return "?";
}

SchedulerKind scheduler_kind_from_name(const std::string& name) {
  if (name == "fifo") return SchedulerKind::Fifo;
  if (name == "aifo") return SchedulerKind::Aifo;
  if (name == "sppifo") return SchedulerKind::SpPifo;
  if (name == "packs") return SchedulerKind::Packs;
  if (name == "pifo") return SchedulerKind::Pifo;
  throw std::invalid_argument("unknown scheduler: " + name);
}

const char* drop_reason_name(DropReason reason) {
  switch (reason) {
    case DropReason::AdmissionReject:
      return "admission_reject";
    case DropReason::QueueFull:
      return "queue_full";
    case DropReason::Evicted:
      return "evicted";
  }
  return "?";
}

bool rank_admissible(std::int64_t count_below, std::int64_t fill,
                     std::int64_t total_capacity, std::int64_t occupancy,
                     std::int64_t prefix_capacity, double burstiness) {
  if (fill == 0) {
    return true;  // empty window: every rank sits at quantile 0
  }
  // count/fill <= 1/(1-k) * (B-b)/B * C_i/B, cross-multiplied so the
  // common k = 0 case compares integers exactly.
  const double lhs = static_cast<double>(count_below) * (1.0 - burstiness) *
                     static_cast<double>(total_capacity) *
                     static_cast<double>(total_capacity);
  const double rhs = static_cast<double>(fill) *
                     static_cast<double>(total_capacity - occupancy) *
                     static_cast<double>(prefix_capacity);
  return lhs <= rhs;
}

namespace {

ArrivalDecision enqueued(int queue_index) {
  ArrivalDecision d;
  d.enqueued = true;
  d.queue_index = queue_index;
  return d;
}

ArrivalDecision dropped(DropReason reason) {
  ArrivalDecision d;
  d.enqueued = false;
  d.reason = reason;
  return d;
}

}  // namespace

// ---------------------------------------------------------------- fifo

FifoScheduler::FifoScheduler(const SchedulerConfig& config)
    : queue_(config.total_capacity()) {}

ArrivalDecision FifoScheduler::on_arrival(const Packet& pkt) {
  if (!queue_.try_push(pkt)) {
    return dropped(DropReason::QueueFull);
  }
  return enqueued(1);
}

std::optional<Packet> FifoScheduler::on_service() { return queue_.pop(); }

// ---------------------------------------------------------------- aifo

AifoScheduler::AifoScheduler(const SchedulerConfig& config,
                             const SchedulerOptions& options)
    : queue_(config.total_capacity()),
      window_(config.window_size, config.max_rank),
      burstiness_(config.burstiness),
      fixed_threshold_(options.aifo_fixed_threshold),
      window_include_dropped_(options.window_include_dropped) {}

ArrivalDecision AifoScheduler::on_arrival(const Packet& pkt) {
  if (window_include_dropped_) {
    window_.push(pkt.rank);
  }
  bool admit;
  if (fixed_threshold_) {
    admit = pkt.rank < *fixed_threshold_;
  } else {
    admit = rank_admissible(window_.count_below(pkt.rank), window_.fill(),
                            queue_.capacity(), queue_.size(),
                            queue_.capacity(), burstiness_);
  }
  if (!admit) {
    return dropped(DropReason::AdmissionReject);
  }
  if (!queue_.try_push(pkt)) {
    return dropped(DropReason::QueueFull);
  }
  if (!window_include_dropped_) {
    window_.push(pkt.rank);
  }
  return enqueued(1);
}

std::optional<Packet> AifoScheduler::on_service() { return queue_.pop(); }

// -------------------------------------------------------------- sp-pifo

SpPifoScheduler::SpPifoScheduler(const SchedulerConfig& config,
                                 const SchedulerOptions& options)
    : bank_(config.capacities), adaptive_(options.sppifo_adaptive) {
  if (options.sppifo_bounds) {
    bounds_ = *options.sppifo_bounds;
  } else {
    bounds_.assign(config.queue_count, 0);
  }
}

ArrivalDecision SpPifoScheduler::on_arrival(const Packet& pkt) {
  // Bottom-up scan: the lowest-priority queue whose bound the rank
  // meets. No match means the rank undercuts every bound -> queue 1.
  int chosen = 0;
  for (int i = bank_.count() - 1; i >= 0; --i) {
    if (bounds_[i] <= pkt.rank) {
      chosen = i;
      break;
    }
  }
  if (adaptive_) {
    if (chosen == 0 && pkt.rank < bounds_[0]) {
      // Push-down: a rank below every bound signals the bounds have
      // drifted too high; shift them all down by the miss amount.
      const std::int64_t cost = bounds_[0] - pkt.rank;
      for (std::int64_t& b : bounds_) {
        b -= cost;
      }
    }
    // Push-up: the chosen queue's bound tracks the last rank it took.
    bounds_[chosen] = pkt.rank;
  }
  if (!bank_.enqueue(chosen, pkt)) {
    return dropped(DropReason::QueueFull);
  }
  return enqueued(chosen + 1);
}

std::optional<Packet> SpPifoScheduler::on_service() { return bank_.dequeue(); }

// ---------------------------------------------------------------- packs

PacksScheduler::PacksScheduler(const SchedulerConfig& config,
                               const SchedulerOptions& options)
    : bank_(config.capacities),
      window_(config.window_size, config.max_rank),
      total_capacity_(config.total_capacity()),
      burstiness_(config.burstiness),
      window_include_dropped_(options.window_include_dropped) {
  prefix_capacity_.reserve(config.capacities.size());
  std::int64_t sum = 0;
  for (std::int64_t cap : config.capacities) {
    sum += cap;
    prefix_capacity_.push_back(sum);
  }
}

ArrivalDecision PacksScheduler::on_arrival(const Packet& pkt) {
  if (window_include_dropped_) {
    window_.push(pkt.rank);
  }
  const std::int64_t count = window_.count_below(pkt.rank);
  const std::int64_t fill = window_.fill();
  const std::int64_t occupancy = bank_.occupancy();
  // The admission threshold grows with the prefix capacity, so once the
  // test passes it keeps passing for every lower-priority queue.
  bool any_pass = false;
  for (int i = 0; i < bank_.count(); ++i) {
    if (!rank_admissible(count, fill, total_capacity_, occupancy,
                         prefix_capacity_[i], burstiness_)) {
      continue;
    }
    any_pass = true;
    if (bank_.enqueue(i, pkt)) {
      if (!window_include_dropped_) {
        window_.push(pkt.rank);
      }
      return enqueued(i + 1);
    }
  }
  return dropped(any_pass ? DropReason::QueueFull
                          : DropReason::AdmissionReject);
}

std::optional<Packet> PacksScheduler::on_service() { return bank_.dequeue(); }

// ----------------------------------------------------------------- pifo

PifoScheduler::PifoScheduler(const SchedulerConfig& config)
    : buffer_(config.total_capacity()) {}

ArrivalDecision PifoScheduler::on_arrival(const Packet& pkt) {
  PifoBuffer::OfferResult result = buffer_.offer(pkt);
  if (!result.accepted) {
    // Refused only when the buffer is full of strictly better packets,
    // so the refusal is a statement about the rank.
    return dropped(DropReason::AdmissionReject);
  }
  ArrivalDecision d = enqueued(1);
  d.evicted = result.evicted;
  return d;
}

std::optional<Packet> PifoScheduler::on_service() { return buffer_.dequeue(); }

// -------------------------------------------------------------- factory

std::unique_ptr<Scheduler> make_scheduler(SchedulerKind kind,
                                          const SchedulerConfig& config,
                                          const SchedulerOptions& options) {
  const std::vector<std::string> problems = validate_config(config);
  if (!problems.empty()) {
    std::ostringstream msg;
    msg << "invalid scheduler config:";
    for (const std::string& p : problems) {
      msg << " " << p << ";";
    }
    throw std::invalid_argument(msg.str());
  }
  if (options.sppifo_bounds) {
    const std::vector<std::int64_t>& bounds = *options.sppifo_bounds;
    if (static_cast<int>(bounds.size()) != config.queue_count) {
      throw std::invalid_argument("sppifo bounds must list one per queue");
    }
    std::int64_t prev = 0;
    for (std::int64_t b : bounds) {
      if (b < 0 || b < prev) {
        throw std::invalid_argument(
            "sppifo bounds must be non-negative and non-decreasing");
      }
      prev = b;
    }
  } else if (kind == SchedulerKind::SpPifo && !options.sppifo_adaptive) {
    throw std::invalid_argument("static sppifo needs explicit bounds");
  }
  switch (kind) {
    case SchedulerKind::Fifo:
      return std::make_unique<FifoScheduler>(config);
    case SchedulerKind::Aifo:
      return std::make_unique<AifoScheduler>(config, options);
    case SchedulerKind::SpPifo:
      return std::make_unique<SpPifoScheduler>(config, options);
    case SchedulerKind::Packs:
      return std::make_unique<PacksScheduler>(config, options);
    case SchedulerKind::Pifo:
      return std::make_unique<PifoScheduler>(config);
  }
  throw std::invalid_argument("unknown scheduler kind");
}

}  // namespace packsched
