// Value types and rank distributions: construction, validation, shape
// of the built-in distributions, and sampling.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "packsched/distribution.hpp"
#include "packsched/model.hpp"
#include "packsched/rng.hpp"
#include "support.hpp"

using namespace packsched;

// ===== RankDistribution =====

TEST_CASE("rank distribution validates its mass") {
  CHECK_NOTHROW(RankDistribution({0.5, 0.5}));
  CHECK_THROWS_AS(RankDistribution({}), std::invalid_argument);
  CHECK_THROWS_AS(RankDistribution({0.6, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(RankDistribution({1.2, -0.2}), std::invalid_argument);
}

TEST_CASE("from_counts normalizes and rejects empty mass") {
  const RankDistribution dist = RankDistribution::from_counts({0, 2, 2, 0, 1, 1});
  CHECK(dist.max_rank() == 5);
  CHECK(dist.mass(0) == 0.0);
  CHECK(dist.mass(1) == doctest::Approx(2.0 / 6.0));
  CHECK(dist.mass(4) == doctest::Approx(1.0 / 6.0));
  CHECK_THROWS_AS(RankDistribution::from_counts({0.0, 0.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(RankDistribution::from_counts({1.0, -1.0}),
                  std::invalid_argument);
}

TEST_CASE("cumulative_below walks the mass prefix") {
  const RankDistribution dist = RankDistribution::from_counts({0, 2, 2, 0, 1, 1});
  CHECK(dist.cumulative_below(0) == 0.0);
  CHECK(dist.cumulative_below(1) == 0.0);
  CHECK(dist.cumulative_below(2) == doctest::Approx(2.0 / 6.0));
  CHECK(dist.cumulative_below(4) == doctest::Approx(4.0 / 6.0));
  CHECK(dist.cumulative_below(6) == doctest::Approx(1.0));
  CHECK(dist.cumulative_below(100) == doctest::Approx(1.0));
  CHECK(dist.top_support() == 5);
}

// ===== make_distribution =====

TEST_CASE("uniform distribution is flat") {
  DistSpec spec;
  spec.kind = DistKind::Uniform;
  const RankDistribution dist = make_distribution(spec, 100);
  for (int r = 0; r <= 100; ++r) {
    CHECK(dist.mass(r) == doctest::Approx(1.0 / 101.0));
  }
}

TEST_CASE("explicit distribution follows the given counts") {
  DistSpec spec;
  spec.kind = DistKind::Explicit;
  spec.counts = {{1, 2}, {2, 2}, {4, 1}, {5, 1}};
  const RankDistribution dist = make_distribution(spec, 5);
  const std::vector<double> expected = {0.0,       2.0 / 6.0, 2.0 / 6.0,
                                        0.0,       1.0 / 6.0, 1.0 / 6.0};
  for (int r = 0; r <= 5; ++r) {
    CHECK(dist.mass(r) == doctest::Approx(expected[r]));
  }
}

TEST_CASE("explicit distribution rejects unusable counts") {
  DistSpec spec;
  spec.kind = DistKind::Explicit;
  CHECK_THROWS_AS(make_distribution(spec, 5), std::invalid_argument);
  spec.counts = {{1, 0.0}};
  CHECK_THROWS_AS(make_distribution(spec, 5), std::invalid_argument);
  spec.counts = {{7, 1.0}};
  CHECK_THROWS_AS(make_distribution(spec, 5), std::invalid_argument);
  spec.counts = {{1, -2.0}};
  CHECK_THROWS_AS(make_distribution(spec, 5), std::invalid_argument);
}

TEST_CASE("exponential decays geometrically; inverse mirrors it") {
  DistSpec spec;
  spec.kind = DistKind::Exponential;
  spec.tau = 20.0;
  const RankDistribution exp_dist = make_distribution(spec, 100);
  const double ratio = std::exp(-1.0 / 20.0);
  for (int r = 0; r < 100; ++r) {
    CHECK(exp_dist.mass(r + 1) ==
          doctest::Approx(exp_dist.mass(r) * ratio).epsilon(1e-9));
  }
  spec.kind = DistKind::InverseExponential;
  const RankDistribution inv_dist = make_distribution(spec, 100);
  for (int r = 0; r <= 100; ++r) {
    CHECK(inv_dist.mass(r) == doctest::Approx(exp_dist.mass(100 - r)));
  }
  spec.tau = 0.0;
  CHECK_THROWS_AS(make_distribution(spec, 100), std::invalid_argument);
}

TEST_CASE("poisson peaks at its mean and normalizes") {
  DistSpec spec;
  spec.kind = DistKind::Poisson;  // lambda defaults to max_rank / 2
  const RankDistribution dist = make_distribution(spec, 100);
  double total = 0.0;
  for (int r = 0; r <= 100; ++r) {
    total += dist.mass(r);
  }
  CHECK(total == doctest::Approx(1.0));
  CHECK(dist.mass(50) > dist.mass(30));
  CHECK(dist.mass(50) > dist.mass(70));
  // Neighbour ratio of a Poisson pmf: lambda / (r + 1).
  CHECK(dist.mass(21) / dist.mass(20) == doctest::Approx(50.0 / 21.0));
}

TEST_CASE("convex distribution is u-shaped and symmetric") {
  DistSpec spec;
  spec.kind = DistKind::Convex;
  const RankDistribution dist = make_distribution(spec, 100);
  CHECK(dist.mass(0) == doctest::Approx(dist.mass(100)));
  CHECK(dist.mass(0) > dist.mass(50));
  CHECK(dist.mass(25) == doctest::Approx(dist.mass(75)));
  CHECK(dist.mass(50) > 0.0);
}

// ===== sampling =====

TEST_CASE("sampling is deterministic for a fixed seed") {
  DistSpec spec;
  spec.kind = DistKind::Uniform;
  const RankDistribution dist = make_distribution(spec, 100);
  const RankSampler sampler(dist);
  Rng a(42);
  Rng b(42);
  Rng c(43);
  bool all_equal = true;
  bool any_differ = false;
  for (int i = 0; i < 1000; ++i) {
    const int x = sampler.sample(a);
    const int y = sampler.sample(b);
    const int z = sampler.sample(c);
    all_equal = all_equal && (x == y);
    any_differ = any_differ || (x != z);
  }
  CHECK(all_equal);
  CHECK(any_differ);
}

TEST_CASE("a point mass always samples its rank") {
  DistSpec spec;
  spec.kind = DistKind::Explicit;
  spec.counts = {{7, 3.0}};
  const RankDistribution dist = make_distribution(spec, 10);
  Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    CHECK(sample_rank(dist, rng) == 7);
  }
}

TEST_CASE("uniform sample frequencies converge to the mass") {
  DistSpec spec;
  spec.kind = DistKind::Uniform;
  const RankDistribution dist = make_distribution(spec, 100);
  const RankSampler sampler(dist);
  Rng rng(2026);
  const int draws = 1000000;
  std::vector<int> freq(101, 0);
  for (int i = 0; i < draws; ++i) {
    ++freq[sampler.sample(rng)];
  }
  for (int r = 0; r <= 100; ++r) {
    const double f = static_cast<double>(freq[r]) / draws;
    CHECK(std::fabs(f - 1.0 / 101.0) < 0.002);
  }
}

TEST_CASE("poisson sample frequencies converge to the mass") {
  DistSpec spec;
  spec.kind = DistKind::Poisson;
  const RankDistribution dist = make_distribution(spec, 100);
  const RankSampler sampler(dist);
  Rng rng(7);
  const int draws = 1000000;
  std::vector<int> freq(101, 0);
  for (int i = 0; i < draws; ++i) {
    ++freq[sampler.sample(rng)];
  }
  for (int r = 0; r <= 100; ++r) {
    const double f = static_cast<double>(freq[r]) / draws;
    CHECK(std::fabs(f - dist.mass(r)) < 0.005);
  }
}

// ===== configuration validation =====

TEST_CASE("a sane scheduler config passes validation") {
  const SchedulerConfig config = testsup::make_config(
      std::vector<std::int64_t>(8, 10), 20, 100, 0.0);
  CHECK(validate_config(config).empty());
  CHECK(config.total_capacity() == 80);
}

TEST_CASE("validate_config flags each broken field") {
  SchedulerConfig config = testsup::make_config({10, 10});

  SUBCASE("burstiness at 1 is rejected") {
    config.burstiness = 1.0;
    CHECK(!validate_config(config).empty());
  }
  SUBCASE("zero capacity is rejected") {
    config.capacities = {10, 0};
    CHECK(!validate_config(config).empty());
  }
  SUBCASE("capacity list must match queue count") {
    config.capacities = {10};
    CHECK(!validate_config(config).empty());
  }
  SUBCASE("window must hold at least one sample") {
    config.window_size = 0;
    CHECK(!validate_config(config).empty());
  }
  SUBCASE("at least one queue") {
    config.queue_count = 0;
    config.capacities = {};
    CHECK(!validate_config(config).empty());
  }
  SUBCASE("negative burstiness is rejected") {
    config.burstiness = -0.1;
    CHECK(!validate_config(config).empty());
  }
}

TEST_CASE("workload validation covers both modes") {
  WorkloadSpec spec = testsup::make_workload(DistKind::Uniform, 100, 10, 11);
  CHECK(validate_workload(spec).empty());

  spec.total_arrivals = 0;
  CHECK(!validate_workload(spec).empty());

  WorkloadSpec flows;
  flows.departure_period = 6;
  FlowSpec flow;
  flow.flow_id = 0;
  flow.rank = 2;
  flow.start_tick = 0;
  flow.stop_tick = 100;
  flow.arrival_period = 5;
  flows.flows.push_back(flow);
  CHECK(validate_workload(flows).empty());

  flows.flows[0].stop_tick = 0;
  CHECK(!validate_workload(flows).empty());
}
