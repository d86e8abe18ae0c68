#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <span>
#include <vector>

#include "agmec/checkpoint_io.hpp"
#include "agmec/mec/env.hpp"

namespace agmec::morl {

using mec::RewardVector;

// Which end of the trailing window receives weight gamma^0. OldestFirst is the
// recurrence as published; NewestFirst exists for ablation.
enum class WindowOrder { OldestFirst, NewestFirst };

// Discounted sum over a window given oldest -> newest.
RewardVector discounted_window_return(std::span<const RewardVector> window, double gamma,
                                      WindowOrder order = WindowOrder::OldestFirst);

// Ring buffer of the n most recent rewards r_{rho+1} .. r_{t+1}.
class RewardWindow {
 public:
  explicit RewardWindow(std::size_t n);

  void push(const RewardVector& r);
  std::size_t capacity() const { return n_; }
  std::size_t size() const { return buf_.size(); }
  bool ready() const { return buf_.size() == n_; }  // rho = t - n + 1 >= 0
  std::vector<RewardVector> contents() const { return {buf_.begin(), buf_.end()}; }

  // Empty while rho < 0.
  std::optional<RewardVector> n_step_return(double gamma, WindowOrder order) const;

  void save(CheckpointWriter& w) const;
  void load(CheckpointReader& r);

 private:
  std::size_t n_;
  std::deque<RewardVector> buf_;
};

}  // namespace agmec::morl
