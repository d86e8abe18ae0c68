#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "agmec/checkpoint_io.hpp"
#include "agmec/dnn/adam.hpp"
#include "agmec/dnn/mlp.hpp"
#include "agmec/dnn/replay.hpp"
#include "agmec/mec/network_config.hpp"
#include "agmec/morl/exploration.hpp"
#include "agmec/morl/kernel_agent.hpp"

namespace agmec::dnn {

using morl::Objective;

// Maps a quantized state to network input: planar position scaled to [-1, 1]
// by the arena, d' divided by the largest |d'| observed so far.
class StateEncoder {
 public:
  explicit StateEncoder(mec::Arena arena) : arena_(arena) {}

  static constexpr std::size_t kInputSize = 3;

  void observe(const morl::QuantizedState& s);
  Eigen::VectorXd encode(const morl::QuantizedState& s) const;
  double log_backlog_scale() const { return scale_; }
  void set_log_backlog_scale(double s) { scale_ = s; }

 private:
  mec::Arena arena_;
  double scale_ = 1.0;
};

struct DnnAgentParams {
  std::vector<std::size_t> hidden{64, 64, 64};
  std::size_t batch = 64;
  std::size_t replay_capacity = 10000;
  std::size_t target_period = 100;  // train steps between hard target copies
  double gamma = 0.3;
  double w_e = 1;
  double w_d = 1;
  AdamParams adam;
};

// y_k = r_{k+1} + gamma * max_a Q(s_{k+1}, a; target), one per transition,
// using the objective's own reward component.
Eigen::VectorXd td_targets(const std::vector<Transition>& batch, const Mlp& target,
                           const StateEncoder& encoder, double gamma, Objective objective);

// One Adam step on the mean squared TD loss over a uniform minibatch of N.
// Returns nullopt (and changes nothing) while the buffer holds fewer than N.
std::optional<double> train_step(Mlp& net, const Mlp& target, const ReplayBuffer& buffer, Adam& adam,
                                 std::size_t N, double gamma, Objective objective,
                                 const StateEncoder& encoder, Rng& sampler);

// Hard copy every `period` train steps.
bool sync_target(const Mlp& net, Mlp& target, std::size_t period, std::size_t train_steps);

class DnnAgent {
 public:
  DnnAgent(morl::ActionSpace space, DnnAgentParams params, mec::Arena arena, Rng exploration,
           Rng init, Rng replay);

  const morl::ActionSpace& actions() const { return space_; }
  void sync_states(std::size_t num_states) { visits_.ensure_rows(num_states); }

  Eigen::VectorXd q_values(Objective o, const morl::QuantizedState& s) const;
  std::size_t select_action(const morl::QuantizedState& s) const;
  morl::Decision epsilon_greedy(std::size_t row, const morl::QuantizedState& s, double epsilon);

  // Stores (s_t, a_t, r_{t+1}, s_{t+1}), trains both networks once when the
  // buffer holds a minibatch, and syncs targets on schedule. Returns true when
  // training ran.
  bool learn(const morl::QuantizedState& s_t, std::size_t a_t, const mec::RewardVector& r_next,
             const morl::QuantizedState& s_next, bool explored);

  const Mlp& net(Objective o) const { return nets_[i(o)]; }
  const Mlp& target(Objective o) const { return targets_[i(o)]; }
  const Adam& optimizer(Objective o) const { return adams_[i(o)]; }
  const ReplayBuffer& buffer() const { return buffer_; }
  std::size_t train_steps() const { return train_steps_; }
  double last_loss(Objective o) const { return losses_[i(o)]; }
  const StateEncoder& encoder() const { return encoder_; }
  const morl::VisitTable& visits() const { return visits_; }

  void save(CheckpointWriter& w) const;
  void load(CheckpointReader& r);

 private:
  static std::size_t i(Objective o) { return static_cast<std::size_t>(o); }

  morl::ActionSpace space_;
  DnnAgentParams params_;
  Rng explore_rng_;
  Rng replay_rng_;
  StateEncoder encoder_;
  std::array<Mlp, 2> nets_;
  std::array<Mlp, 2> targets_;
  std::array<Adam, 2> adams_;
  ReplayBuffer buffer_;
  morl::VisitTable visits_;
  std::size_t train_steps_ = 0;
  std::array<double, 2> losses_{0, 0};
};

}  // namespace agmec::dnn
