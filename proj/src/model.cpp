#include "packsched/model.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace packsched {

namespace {
constexpr double kMassTolerance = 1e-9;
}

RankDistribution::RankDistribution(std::vector<double> mass)
    : mass_(std::move(mass)) {
  if (mass_.empty()) {
    throw std::invalid_argument("rank distribution needs at least one rank");
  }
  double sum = 0.0;
  for (double m : mass_) {
    if (!(m >= 0.0)) {
      throw std::invalid_argument("rank distribution has a negative entry");
    }
    sum += m;
  }
  if (std::fabs(sum - 1.0) > kMassTolerance) {
    throw std::invalid_argument("rank distribution does not sum to 1");
  }
}

RankDistribution RankDistribution::from_counts(
    const std::vector<double>& counts) {
  double total = 0.0;
  for (double c : counts) {
    if (!(c >= 0.0)) {
      throw std::invalid_argument("rank counts must be non-negative");
    }
    total += c;
  }
  if (total <= 0.0) {
    throw std::invalid_argument("rank counts are all zero");
  }
  std::vector<double> mass(counts.size());
  for (std::size_t r = 0; r < counts.size(); ++r) {
    mass[r] = counts[r] / total;
  }
  return RankDistribution(std::move(mass));
}

double RankDistribution::cumulative_below(int rank) const {
  double sum = 0.0;
  const int limit = std::min<int>(rank, static_cast<int>(mass_.size()));
  for (int r = 0; r < limit; ++r) {
    sum += mass_[r];
  }
  return sum;
}

int RankDistribution::top_support() const {
  for (int r = max_rank(); r >= 0; --r) {
    if (mass_[r] > 0.0) {
      return r;
    }
  }
  return 0;  // unreachable for a validated distribution
}

std::int64_t SchedulerConfig::total_capacity() const {
  return std::accumulate(capacities.begin(), capacities.end(),
                         std::int64_t{0});
}

std::vector<std::string> validate_config(const SchedulerConfig& config) {
  std::vector<std::string> problems;
  if (config.queue_count < 1) {
    problems.push_back("queue_count must be at least 1");
  }
  if (static_cast<int>(config.capacities.size()) != config.queue_count) {
    problems.push_back("capacities must list one entry per queue");
  }
  for (std::size_t i = 0; i < config.capacities.size(); ++i) {
    if (config.capacities[i] <= 0) {
      problems.push_back("queue " + std::to_string(i + 1) +
                         " capacity must be positive");
    }
  }
  if (config.window_size < 1) {
    problems.push_back("window_size must be at least 1");
  }
  if (!(config.burstiness >= 0.0) || config.burstiness >= 1.0) {
    problems.push_back("burstiness must lie in [0, 1)");
  }
  if (config.max_rank < 1) {
    problems.push_back("max_rank must be at least 1");
  }
  return problems;
}

const char* dist_kind_name(DistKind kind) {
  switch (kind) {
    case DistKind::Uniform:
      return "uniform";
    case DistKind::Exponential:
      return "exponential";
    case DistKind::InverseExponential:
      return "inverse_exponential";
    case DistKind::Poisson:
      return "poisson";
    case DistKind::Convex:
      return "convex";
    case DistKind::Explicit:
      return "explicit";
  }
  return "?";
}

DistKind dist_kind_from_name(const std::string& name) {
  if (name == "uniform") return DistKind::Uniform;
  if (name == "exponential") return DistKind::Exponential;
  if (name == "inverse_exponential") return DistKind::InverseExponential;
  if (name == "poisson") return DistKind::Poisson;
  if (name == "convex") return DistKind::Convex;
  if (name == "explicit") return DistKind::Explicit;
  throw std::invalid_argument("unknown distribution kind: " + name);
}

std::vector<std::string> validate_workload(const WorkloadSpec& spec) {
  std::vector<std::string> problems;
  if (spec.departure_period < 1) {
    problems.push_back("departure_period must be positive");
  }
  if (spec.flows.empty()) {
    if (spec.arrival_period < 1) {
      problems.push_back("arrival_period must be positive");
    }
    if (spec.total_arrivals < 1) {
      problems.push_back("total_arrivals must be positive");
    }
  } else {
    for (const FlowSpec& flow : spec.flows) {
      const std::string label = "flow " + std::to_string(flow.flow_id);
      if (flow.arrival_period < 1) {
        problems.push_back(label + ": arrival_period must be positive");
      }
      if (flow.rank < 0) {
        problems.push_back(label + ": rank must be non-negative");
      }
      if (flow.stop_tick <= flow.start_tick) {
        problems.push_back(label + ": stop_tick must exceed start_tick");
      }
      if (flow.start_tick < 0) {
        problems.push_back(label + ": start_tick must be non-negative");
      }
    }
  }
  return problems;
}

}  // namespace packsched
