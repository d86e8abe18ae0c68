#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "agmec/dnn/dnn_agent.hpp"
#include "agmec/mec/env.hpp"
#include "agmec/morl/kernel_agent.hpp"
#include "agmec/morl/state_set.hpp"
#include "agmec/sim/metrics.hpp"
#include "agmec/sim/sim_config.hpp"

namespace agmec::sim {

// What each agent observes at the start of a slot: the UAV position and the
// log of the previous slot's total backlog.
morl::QuantizedState observe(const mec::EnvState& env);

// Closed loop of M+1 agents (agent 0 flies the UAV, agent m offloads for UE m)
// and the environment. Every random source is a named stream of one seed.
class Simulation {
 public:
  Simulation(SimConfig cfg, std::uint64_t seed);

  // Runs one slot: decide, step the environment, observe, learn.
  SlotRecord step();

  std::int64_t slot() const { return env_.t; }
  std::uint64_t seed() const { return seed_; }
  const SimConfig& config() const { return cfg_; }
  const mec::EnvState& env() const { return env_; }
  const mec::EnvRngs& env_rngs() const { return rngs_; }
  const mec::StepOutcome& last_outcome() const { return last_; }
  const morl::QuantizedStateSet& states() const { return states_; }
  std::size_t current_state_index() const { return current_; }
  std::size_t num_agents() const { return cfg_.network.num_ues() + 1; }

  const morl::KernelAgent& kernel_agent(std::size_t i) const { return kernel_.at(i); }
  const dnn::DnnAgent& dnn_agent(std::size_t i) const { return dnn_.at(i); }

  double avg_energy() const { return avg_e_.mean(); }
  double avg_backlog() const { return avg_d_.mean(); }

  // Full state, including every RNG stream; a loaded simulation continues
  // bit-identically.
  void save(std::ostream& out) const;
  void load(std::istream& in);

 private:
  void sync_agents();

  SimConfig cfg_;
  std::uint64_t seed_;
  mec::EnvState env_;
  mec::EnvRngs rngs_;
  morl::QuantizedStateSet states_;
  std::vector<morl::KernelAgent> kernel_;
  std::vector<dnn::DnnAgent> dnn_;
  std::size_t current_ = 0;
  mec::StepOutcome last_;
  RunningAverage avg_e_, avg_d_;
};

}  // namespace agmec::sim
