#include "magnocool/replay_buffer.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace magnocool {
namespace rl {

ReplayBuffer::ReplayBuffer(int obs_dim, int action_dim, long capacity)
    : obs_dim_(obs_dim), action_dim_(action_dim), capacity_(capacity) {
  if (obs_dim < 1 || action_dim < 1 || capacity < 1)
    throw std::invalid_argument("ReplayBuffer: bad dimensions or capacity");
}

void ReplayBuffer::ensure_allocated(long n) {
  if (n <= allocated_) return;
  long grow = std::max<long>(allocated_ * 2, 4096);
  grow = std::min(std::max(grow, n), capacity_);
  s_.conservativeResize(obs_dim_, grow);
  a_.conservativeResize(action_dim_, grow);
  s2_.conservativeResize(obs_dim_, grow);
  r_.conservativeResize(grow);
  d_.conservativeResize(grow);
  allocated_ = grow;
}

void ReplayBuffer::push(const Vec& s, const Vec& a, double r, const Vec& s2,
                        bool done) {
  if (s.size() != obs_dim_ || s2.size() != obs_dim_ || a.size() != action_dim_)
    throw std::invalid_argument("ReplayBuffer: transition shape mismatch");
  ensure_allocated(std::min(size_ + 1, capacity_));
  s_.col(head_) = s;
  a_.col(head_) = a;
  s2_.col(head_) = s2;
  r_(head_) = r;
  d_(head_) = done ? 1.0 : 0.0;
  head_ = (head_ + 1) % capacity_;
  size_ = std::min(size_ + 1, capacity_);
}

Batch ReplayBuffer::sample(int batch_size, std::mt19937_64& rng) const {
  if (batch_size < 1 || batch_size > size_)
    throw std::invalid_argument("ReplayBuffer: batch size " +
                                std::to_string(batch_size) +
                                " not in [1, size=" + std::to_string(size_) + "]");
  // Floyd's sampling: batch_size distinct indices in [0, size_), collected
  // in a hash-independent order.
  std::vector<long> picks;
  picks.reserve(batch_size);
  std::unordered_set<long> chosen;
  chosen.reserve(static_cast<size_t>(batch_size) * 2);
  for (long j = size_ - batch_size; j < size_; ++j) {
    std::uniform_int_distribution<long> u(0, j);
    const long t = u(rng);
    if (chosen.insert(t).second) {
      picks.push_back(t);
    } else {
      chosen.insert(j);
      picks.push_back(j);
    }
  }

  Batch b;
  b.s.resize(obs_dim_, batch_size);
  b.a.resize(action_dim_, batch_size);
  b.s2.resize(obs_dim_, batch_size);
  b.r.resize(batch_size);
  b.done.resize(batch_size);
  for (int k = 0; k < batch_size; ++k) {
    const long idx = picks[k];
    b.s.col(k) = s_.col(idx);
    b.a.col(k) = a_.col(idx);
    b.s2.col(k) = s2_.col(idx);
    b.r(k) = r_(idx);
    b.done(k) = d_(idx);
  }
  return b;
}

}  // namespace rl
}  // namespace magnocool
