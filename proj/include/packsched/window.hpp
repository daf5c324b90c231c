// Sliding window over the ranks of recently seen packets. The admission
// policies estimate each arriving rank's quantile against this window.

#pragma once

#include <cstdint>
#include <vector>

#include "packsched/model.hpp"

namespace packsched {

// Fixed-capacity circular buffer of ranks with per-rank occurrence
// counts, so quantile queries cost O(max_rank) instead of O(capacity).
// During cold start (fewer samples than capacity) quantiles use the
// current fill as the denominator.
class SlidingWindow {
 public:
  SlidingWindow(int capacity, int max_rank);

  // Records one rank, overwriting the oldest entry once full.
  void push(int rank);

  // Number of buffered entries strictly below `rank`.
  std::int64_t count_below(int rank) const;

  // count_below(rank) / fill; 0 while the window is empty.
  double quantile(int rank) const;

  // Empirical distribution of the buffered ranks over 0..max_rank.
  // Throws std::runtime_error when the window is empty.
  RankDistribution snapshot() const;

  int fill() const { return fill_; }
  int capacity() const { return capacity_; }
  int max_rank() const { return max_rank_; }
  int write_index() const { return write_index_; }
  const std::vector<int>& entries() const { return entries_; }

 private:
  int capacity_;
  int max_rank_;
  int fill_ = 0;
  int write_index_ = 0;
  std::vector<int> entries_;
  std::vector<std::int64_t> rank_count_;
};

}  // namespace packsched
