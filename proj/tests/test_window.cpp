// Sliding window: circular replacement, quantiles with the cold-start
// denominator, snapshots, and agreement with a naive last-N model.

#include <cmath>
#include <stdexcept>

#include "doctest.h"

#include "packsched/rng.hpp"
#include "packsched/window.hpp"
#include "support.hpp"

using namespace packsched;

// ===== push mechanics =====

TEST_CASE("first push lands at slot zero") {
  SlidingWindow window(3, 10);
  window.push(4);
  CHECK(window.fill() == 1);
  CHECK(window.write_index() == 1);
  CHECK(window.entries()[0] == 4);
}

TEST_CASE("a full window overwrites the oldest slot") {
  SlidingWindow window(3, 10);
  window.push(1);
  window.push(2);
  window.push(3);
  CHECK(window.fill() == 3);
  CHECK(window.write_index() == 0);
  window.push(9);
  CHECK(window.fill() == 3);
  CHECK(window.write_index() == 1);
  CHECK(window.entries()[0] == 9);
  CHECK(window.entries()[1] == 2);
  CHECK(window.entries()[2] == 3);
  CHECK(window.count_below(9) == 2);
}

// ===== quantiles =====

TEST_CASE("quantiles count strictly lower ranks") {
  SlidingWindow window(6, 5);
  for (int r : {1, 1, 2, 2, 4, 5}) {
    window.push(r);
  }
  CHECK(window.quantile(1) == 0.0);
  CHECK(window.quantile(4) == doctest::Approx(4.0 / 6.0));
  CHECK(window.quantile(6) == doctest::Approx(1.0));
  CHECK(window.count_below(3) == 4);
  CHECK(window.count_below(0) == 0);
}

TEST_CASE("cold start divides by the fill, not the capacity") {
  SlidingWindow window(50, 5);
  for (int r : {1, 1, 2, 2, 4, 5}) {
    window.push(r);
  }
  CHECK(window.fill() == 6);
  CHECK(window.quantile(4) == doctest::Approx(4.0 / 6.0));
}

TEST_CASE("an empty window reports quantile zero and has no snapshot") {
  SlidingWindow window(4, 9);
  CHECK(window.quantile(0) == 0.0);
  CHECK(window.quantile(9) == 0.0);
  CHECK_THROWS_AS(window.snapshot(), std::runtime_error);
}

// ===== snapshot =====

TEST_CASE("snapshot reports the buffered empirical distribution") {
  SlidingWindow window(6, 5);
  for (int r : {1, 1, 2, 2, 4, 5}) {
    window.push(r);
  }
  const RankDistribution dist = window.snapshot();
  CHECK(dist.mass(0) == 0.0);
  CHECK(dist.mass(1) == doctest::Approx(2.0 / 6.0));
  CHECK(dist.mass(2) == doctest::Approx(2.0 / 6.0));
  CHECK(dist.mass(3) == 0.0);
  CHECK(dist.mass(4) == doctest::Approx(1.0 / 6.0));
  CHECK(dist.mass(5) == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("snapshot of a single entry is a point mass") {
  SlidingWindow window(8, 5);
  window.push(3);
  const RankDistribution dist = window.snapshot();
  CHECK(dist.mass(3) == 1.0);
}

// ===== properties against the naive model =====

TEST_CASE("window matches a naive last-N list over random pushes") {
  const int capacity = 37;
  const int max_rank = 60;
  SlidingWindow window(capacity, max_rank);
  testsup::NaiveWindow naive(capacity);
  Rng rng(99);
  for (int step = 0; step < 10000; ++step) {
    const int rank = static_cast<int>(rng.next_below(max_rank + 1));
    window.push(rank);
    naive.push(rank);
    CHECK(window.fill() == naive.fill());
    const int probe = static_cast<int>(rng.next_below(max_rank + 2));
    REQUIRE(window.count_below(probe) == naive.count_below(probe));
  }
}

TEST_CASE("quantile is monotone and agrees with the snapshot cumulative") {
  SlidingWindow window(64, 30);
  Rng rng(123);
  for (int i = 0; i < 500; ++i) {
    window.push(static_cast<int>(rng.next_below(31)));
  }
  const RankDistribution snap = window.snapshot();
  CHECK(window.quantile(0) == 0.0);
  double prev = 0.0;
  for (int r = 0; r <= 31; ++r) {
    const double q = window.quantile(r);
    CHECK(q >= prev);
    CHECK(std::fabs(q - snap.cumulative_below(r)) < 1e-12);
    prev = q;
  }
  CHECK(window.quantile(31) == doctest::Approx(1.0));
}
