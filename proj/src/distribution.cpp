#include "packsched/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace packsched {

namespace {

std::vector<double> explicit_counts(const DistSpec& spec, int max_rank) {
  if (spec.counts.empty()) {
    throw std::invalid_argument("explicit distribution needs counts");
  }
  std::vector<double> counts(max_rank + 1, 0.0);
  for (const auto& [rank, count] : spec.counts) {
    if (rank < 0 || rank > max_rank) {
      throw std::invalid_argument("explicit count rank out of range");
    }
    if (!(count >= 0.0)) {
      throw std::invalid_argument("explicit counts must be non-negative");
    }
    counts[rank] += count;
  }
  return counts;
}

}  // namespace

RankDistribution make_distribution(const DistSpec& spec, int max_rank) {
  if (max_rank < 1) {
    throw std::invalid_argument("max_rank must be at least 1");
  }
  const int n = max_rank + 1;
  std::vector<double> weight(n, 0.0);
  switch (spec.kind) {
    case DistKind::Uniform:
      std::fill(weight.begin(), weight.end(), 1.0);
      break;
    case DistKind::Exponential:
      if (!(spec.tau > 0.0)) {
        throw std::invalid_argument("exponential tau must be positive");
      }
      for (int r = 0; r < n; ++r) {
        weight[r] = std::exp(-static_cast<double>(r) / spec.tau);
      }
      break;
    case DistKind::InverseExponential:
      if (!(spec.tau > 0.0)) {
        throw std::invalid_argument("inverse_exponential tau must be positive");
      }
      for (int r = 0; r < n; ++r) {
        weight[r] = std::exp(-static_cast<double>(max_rank - r) / spec.tau);
      }
      break;
    case DistKind::Poisson: {
      const double lambda =
          spec.lambda > 0.0 ? spec.lambda : static_cast<double>(max_rank) / 2.0;
      // Work in log space; r! overflows a double well before r = 100.
      std::vector<double> logw(n);
      double peak = -1e300;
      for (int r = 0; r < n; ++r) {
        logw[r] = r * std::log(lambda) - lambda - std::lgamma(r + 1.0);
        peak = std::max(peak, logw[r]);
      }
      for (int r = 0; r < n; ++r) {
        weight[r] = std::exp(logw[r] - peak);
      }
      break;
    }
    case DistKind::Convex: {
      const double mid = static_cast<double>(max_rank) / 2.0;
      for (int r = 0; r < n; ++r) {
        const double d = static_cast<double>(r) - mid;
        weight[r] = d * d + 1.0;
      }
      break;
    }
    case DistKind::Explicit:
      weight = explicit_counts(spec, max_rank);
      break;
  }
  return RankDistribution::from_counts(weight);
}

RankSampler::RankSampler(const RankDistribution& dist)
    : cumulative_(dist.masses().size()) {
  double sum = 0.0;
  for (std::size_t r = 0; r < cumulative_.size(); ++r) {
    sum += dist.mass(static_cast<int>(r));
    cumulative_[r] = sum;
  }
  cumulative_.back() = 1.0;  // guard against rounding at the top
}

int RankSampler::sample(Rng& rng) const {
  const double u = rng.next_double();
  const auto it =
      std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return static_cast<int>(it - cumulative_.begin());
}

int sample_rank(const RankDistribution& dist, Rng& rng) {
  return RankSampler(dist).sample(rng);
}

}  // namespace packsched
