// Seeded pseudo-random source shared by workload generation and tests.
// Thin wrapper over std::mt19937_64 that derives doubles and bounded
// integers itself, so the same seed yields the same stream on every
// platform (the std:: distribution adaptors are not portable).

#pragma once

#include <cstdint>
#include <random>

namespace packsched {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in [0, n), unbiased via rejection.
  std::int64_t next_below(std::int64_t n) {
    const std::uint64_t span = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return static_cast<std::int64_t>(x % span);
  }

  // Uniform integer in [lo, hi] inclusive.
  std::int64_t next_range(std::int64_t lo, std::int64_t hi) {
    return lo + next_below(hi - lo + 1);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace packsched
