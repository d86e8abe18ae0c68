#pragma once

#include <array>
#include <cstddef>

#include <Eigen/Core>

#include "agmec/checkpoint_io.hpp"
#include "agmec/morl/action_space.hpp"
#include "agmec/morl/exploration.hpp"
#include "agmec/morl/kernel.hpp"
#include "agmec/morl/n_step.hpp"
#include "agmec/morl/state_set.hpp"
#include "agmec/random.hpp"

namespace agmec::morl {

enum class Objective { Energy = 0, Backlog = 1 };

struct KernelAgentParams {
  double alpha = 0.01;  // weight step size
  double k_r = 0.001;   // average-reward step size
  double gamma = 0.3;
  std::size_t n = 5;
  double w_e = 1;
  double w_d = 1;
  KernelScales scales;
  double mu0 = 0.82;
  WindowOrder order = WindowOrder::OldestFirst;
};

// One distributed decision maker (the UAV or a UE): two kernel action-value
// functions, one per objective, learned by average-reward TD with an n-step
// trailing return, and an exploration rule restricted to unvisited actions.
class KernelAgent {
 public:
  KernelAgent(ActionSpace space, KernelAgentParams params, Rng exploration);

  const ActionSpace& actions() const { return space_; }
  const KernelAgentParams& params() const { return params_; }

  // Keeps the visit table in step with the shared state set.
  void sync_states(std::size_t num_states) { visits_.ensure_rows(num_states); }

  double q_value(Objective o, const QuantizedState& s, std::size_t a) const;
  // Values of every action at s.
  Eigen::VectorXd q_values(Objective o, const QuantizedState& s) const;
  // argmax_a w_r^T [Q_e, Q_d]; ties go to the lowest index.
  std::size_t select_action(const QuantizedState& s) const;

  // Draws eps_x ~ U(0,1); explores an unvisited action when eps_x < epsilon and
  // one exists, otherwise acts greedily. Marks the chosen pair visited.
  Decision epsilon_greedy(std::size_t row, const QuantizedState& s, double epsilon);

  // Semi-gradient TD step on both weight vectors with the given return.
  void update_weights(const QuantizedState& s_t, std::size_t a_t, const QuantizedState& s_next,
                      const RewardVector& ret);
  // Average-reward estimate update; only valid for greedy actions.
  void update_avg_reward(const QuantizedState& s_t, std::size_t a_t, const QuantizedState& s_next,
                         const RewardVector& ret, bool explored);
  // Runs the ALD test for (s, a) on both dictionaries; admitted features get weight 0.
  std::array<AldResult, 2> grow_dictionaries(const QuantizedState& s, std::size_t a);

  // Everything that follows the environment step for slot t: buffer r_{t+1},
  // form the n-step return once rho >= 0, update weights, gated average
  // reward, then the ALD tests. Returns true when an update fired.
  bool learn(const QuantizedState& s_t, std::size_t a_t, const RewardVector& r_next,
             const QuantizedState& s_next, bool explored);

  const Eigen::VectorXd& weights(Objective o) const { return weights_[idx(o)]; }
  Eigen::VectorXd& mutable_weights(Objective o) { return weights_[idx(o)]; }
  const KernelDictionary& dictionary(Objective o) const { return dicts_[idx(o)]; }
  const RewardVector& avg_reward() const { return avg_reward_; }
  void set_avg_reward(const RewardVector& r) { avg_reward_ = r; }
  const VisitTable& visits() const { return visits_; }
  const RewardWindow& window() const { return window_; }

  void save(CheckpointWriter& w) const;
  void load(CheckpointReader& r);

 private:
  static std::size_t idx(Objective o) { return static_cast<std::size_t>(o); }
  double target_component(const RewardVector& r, Objective o) const {
    return o == Objective::Energy ? r.e : r.d;
  }

  ActionSpace space_;
  KernelAgentParams params_;
  Rng rng_;
  std::array<KernelDictionary, 2> dicts_;
  std::array<Eigen::VectorXd, 2> weights_;
  RewardVector avg_reward_;
  RewardWindow window_;
  VisitTable visits_;
};

}  // namespace agmec::morl
