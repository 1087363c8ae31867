#pragma once

#include <cstdint>
#include <random>

#include "magnocool/types.hpp"

namespace magnocool {
namespace rl {

/// A sampled minibatch; columns are transitions.
struct Batch {
  Mat s, a, s2;
  Vec r, done;

  int size() const { return static_cast<int>(r.size()); }
};

/// Fixed-capacity ring buffer of transitions with FIFO eviction. Sampling
/// is uniform without replacement within a batch. Storage grows in blocks
/// up to the capacity.
class ReplayBuffer {
 public:
  ReplayBuffer(int obs_dim, int action_dim, long capacity);

  void push(const Vec& s, const Vec& a, double r, const Vec& s2, bool done);

  long size() const { return size_; }
  long capacity() const { return capacity_; }

  /// Requires 1 <= batch_size <= size(); indices within a batch are distinct.
  Batch sample(int batch_size, std::mt19937_64& rng) const;

 private:
  void ensure_allocated(long n);

  int obs_dim_, action_dim_;
  long capacity_;
  long allocated_ = 0;
  long size_ = 0;
  long head_ = 0;  // next slot to write (FIFO eviction once full)
  Mat s_, a_, s2_;
  Vec r_, d_;
};

}  // namespace rl
}  // namespace magnocool
