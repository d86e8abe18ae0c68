#pragma once

#include <cstddef>
#include <vector>

#include "agmec/checkpoint_io.hpp"
#include "agmec/mec/env.hpp"
#include "agmec/morl/state_set.hpp"
#include "agmec/random.hpp"

namespace agmec::dnn {

struct Transition {
  morl::QuantizedState state;
  std::size_t action = 0;
  mec::RewardVector reward;  // r_{k+1}
  morl::QuantizedState next_state;
};

// Fixed-capacity ring buffer; the oldest transition is overwritten when full.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity);

  void push(const Transition& t);
  std::size_t size() const { return items_.size(); }
  std::size_t capacity() const { return capacity_; }
  const Transition& at(std::size_t i) const { return items_.at(i); }

  // n indices drawn uniformly (with replacement) over occupied slots.
  std::vector<std::size_t> sample_indices(std::size_t n, Rng& rng) const;

  void save(CheckpointWriter& w) const;
  void load(CheckpointReader& r);

 private:
  std::size_t capacity_;
  std::size_t head_ = 0;
  std::vector<Transition> items_;
};

}  // namespace agmec::dnn
