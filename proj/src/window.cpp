#include "packsched/window.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace packsched {

SlidingWindow::SlidingWindow(int capacity, int max_rank)
    : capacity_(capacity), max_rank_(max_rank) {
  assert(capacity_ >= 1);
  assert(max_rank_ >= 0);
  entries_.resize(capacity_, 0);
  rank_count_.assign(max_rank_ + 1, 0);
}

void SlidingWindow::push(int rank) {
  assert(rank >= 0 && rank <= max_rank_);
  if (fill_ < capacity_) {
    ++fill_;
  } else {
    --rank_count_[entries_[write_index_]];  // evict the oldest entry
  }
  entries_[write_index_] = rank;
  ++rank_count_[rank];
  write_index_ = (write_index_ + 1) % capacity_;
}

std::int64_t SlidingWindow::count_below(int rank) const {
  const int limit = std::min(rank, max_rank_ + 1);
  std::int64_t count = 0;
  for (int r = 0; r < limit; ++r) {
    count += rank_count_[r];
  }
  return count;
}

double SlidingWindow::quantile(int rank) const {
  if (fill_ == 0) {
    return 0.0;
  }
  return static_cast<double>(count_below(rank)) / static_cast<double>(fill_);
}

RankDistribution SlidingWindow::snapshot() const {
  if (fill_ == 0) {
    throw std::runtime_error("no samples in window");
  }
  std::vector<double> counts(rank_count_.begin(), rank_count_.end());
  return RankDistribution::from_counts(counts);
}

}  // namespace packsched
