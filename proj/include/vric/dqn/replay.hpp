#pragma once

#include <array>
#include <cstddef>
#include <random>
#include <vector>

#include "vric/state_vector.hpp"

namespace vric::dqn {

// One environment transition with already-normalized observations.
struct Transition {
  std::array<double, kStateDim> state{};
  std::array<double, kStateDim> next_state{};
  int action = 0;
  double reward = 0.0;
  bool done = false;
};

// Fixed-capacity ring with uniform sampling (with replacement).
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
    ring_.reserve(capacity);
  }

  void push(const Transition& t) {
    if (ring_.size() < capacity_) {
      ring_.push_back(t);
    } else {
      ring_[head_] = t;
      head_ = (head_ + 1) % capacity_;
    }
  }

  [[nodiscard]] std::size_t size() const { return ring_.size(); }
  [[nodiscard]] std::size_t capacity() const { return capacity_; }

  void sample(std::mt19937_64& rng, std::size_t n,
              std::vector<Transition>& out) const {
    out.clear();
    std::uniform_int_distribution<std::size_t> pick(0, ring_.size() - 1);
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back(ring_[pick(rng)]);
    }
  }

 private:
  std::size_t capacity_;
  std::size_t head_ = 0;
  std::vector<Transition> ring_;
};

}  // namespace vric::dqn
