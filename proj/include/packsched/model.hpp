// Core value types: packets, rank distributions, scheduler and workload
// configuration. Everything downstream (schedulers, optimizer, simulator)
// is defined in terms of these.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace packsched {

// Sentinel for packets that do not belong to a tagged flow.
inline constexpr int kNoFlow = -1;

// A unit-size packet. Lower rank means higher priority; ids are assigned
// in arrival order, so (rank, id) is a total order that breaks rank ties
// in favour of the earlier arrival.
struct Packet {
  std::int64_t id = 0;
  int rank = 0;
  std::int64_t arrival_tick = 0;
  int flow_id = kNoFlow;
};

// Probability mass over ranks 0..max_rank. Mass entries are validated on
// construction: non-negative and summing to 1 within 1e-9.
class RankDistribution {
 public:
  explicit RankDistribution(std::vector<double> mass);

  // Normalizes a histogram of non-negative counts (at least one positive).
  static RankDistribution from_counts(const std::vector<double>& counts);

  int max_rank() const { return static_cast<int>(mass_.size()) - 1; }
  double mass(int rank) const { return mass_[rank]; }
  const std::vector<double>& masses() const { return mass_; }

  // Probability of drawing a rank strictly below `rank`. Accepts any
  // non-negative argument; saturates above max_rank.
  double cumulative_below(int rank) const;

  // Largest rank with positive mass.
  int top_support() const;

 private:
  std::vector<double> mass_;
};

// Static description of one scheduler instance: a bank of `queue_count`
// strict-priority FIFO queues with per-queue capacities, plus the
// admission parameters (sliding-window length and the burstiness
// allowance k) used by the window-based policies.
struct SchedulerConfig {
  int queue_count = 1;
  std::vector<std::int64_t> capacities;
  int window_size = 1;
  double burstiness = 0.0;  // k in [0, 1)
  int max_rank = 100;

  std::int64_t total_capacity() const;
};

// Returns a list of human-readable problems; empty means the config is
// usable. Callers that need hard failure wrap this in an exception.
std::vector<std::string> validate_config(const SchedulerConfig& config);

enum class DistKind {
  Uniform,
  Exponential,
  InverseExponential,
  Poisson,
  Convex,
  Explicit,
};

const char* dist_kind_name(DistKind kind);
DistKind dist_kind_from_name(const std::string& name);

// Parameters for make_distribution. tau and lambda are only consulted by
// the kinds that use them; counts only by Explicit.
struct DistSpec {
  DistKind kind = DistKind::Uniform;
  double tau = 20.0;             // decay constant for the exponential kinds
  double lambda = -1.0;          // Poisson mean; < 0 selects max_rank / 2
  std::map<int, double> counts;  // Explicit only: rank -> count
};

// A constant-rate packet source with a fixed rank, active on
// [start_tick, stop_tick).
struct FlowSpec {
  int flow_id = 0;
  int rank = 0;
  std::int64_t start_tick = 0;
  std::int64_t stop_tick = 0;
  std::int64_t arrival_period = 1;
};

// Arrival-side description of a run. Either a single aggregate source
// (one arrival every arrival_period ticks, ranks drawn from
// `distribution`) or, when `flows` is non-empty, a set of fixed-rank
// periodic flows. The service side drains one packet every
// departure_period ticks, so departure_period > arrival_period models
// overload.
struct WorkloadSpec {
  DistSpec distribution;
  std::int64_t arrival_period = 1;
  std::int64_t departure_period = 1;
  std::int64_t total_arrivals = 0;
  std::vector<FlowSpec> flows;
};

std::vector<std::string> validate_workload(const WorkloadSpec& spec);

}  // namespace packsched
