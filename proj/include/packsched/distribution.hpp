// Construction of the built-in rank distributions and inverse-CDF
// sampling from them.

#pragma once

#include "packsched/model.hpp"
#include "packsched/rng.hpp"

namespace packsched {

// Builds the probability mass for `spec.kind` over ranks 0..max_rank:
//   uniform              1 / (max_rank + 1)
//   exponential          proportional to exp(-r / tau)
//   inverse_exponential  proportional to exp(-(max_rank - r) / tau)
//   poisson              proportional to lambda^r e^-lambda / r!, truncated
//   convex               proportional to (r - max_rank / 2)^2 + 1
//   explicit             normalized from spec.counts
// Throws std::invalid_argument for unusable parameters (explicit counts
// empty, all-zero, negative, or out of range).
RankDistribution make_distribution(const DistSpec& spec, int max_rank);

// Precomputed cumulative table for repeated draws.
class RankSampler {
 public:
  explicit RankSampler(const RankDistribution& dist);
  int sample(Rng& rng) const;

 private:
  std::vector<double> cumulative_;
};

// One-shot convenience draw.
int sample_rank(const RankDistribution& dist, Rng& rng);

}  // namespace packsched
