#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "agmec/mec/network_config.hpp"
#include "agmec/random.hpp"

namespace agmec::mec {

// Eight compass directions, counter-clockwise from east in 45 degree steps.
enum class Direction : std::uint8_t { E = 0, NE, N, NW, W, SW, S, SE };
inline constexpr std::size_t kNumDirections = 8;

Eigen::Vector2d unit_vector(Direction d);

// One-hot offloading choice [alpha_UAV, alpha_BS, alpha_UE].
enum class Offload : std::uint8_t { Uav = 0, Bs = 1, Local = 2 };
inline constexpr std::size_t kNumOffloadChoices = 3;

struct JointAction {
  Direction uav = Direction::E;
  std::vector<Offload> offload;  // one per UE
};

struct RewardVector {
  double e = 0;  // -E_t
  double d = 0;  // -D_t

  RewardVector& operator+=(const RewardVector& o) {
    e += o.e;
    d += o.d;
    return *this;
  }
  friend RewardVector operator*(double s, const RewardVector& r) { return {s * r.e, s * r.d}; }
  friend bool operator==(const RewardVector&, const RewardVector&) = default;
};

struct EnvState {
  Eigen::Vector3d uav{0, 0, 0};
  std::vector<TaskQueue> ue_queues;
  TaskQueue uav_queue;
  TaskQueue bs_queue;
  std::int64_t t = 0;
  Bits last_backlog = 0;  // D_{t-1}

  // Running ledger for the conservation audit.
  Bits produced_total = 0;
  Bits processed_total = 0;

  static EnvState initial(const NetworkConfig& cfg);
  Bits pending_fresh() const;
  Bits backlog() const;  // sum of carried bits in every queue
  friend bool operator==(const EnvState&, const EnvState&) = default;
};

// Per-UE diagnostics for one slot.
struct UeSlot {
  Offload target = Offload::Local;
  double gain_bs = 0, gain_uav = 0;
  double rate_bs = 0, rate_uav = 0;
  bool los = false;
  Bits offloaded = 0;
  double t_trans = 0;
  double e_trans = 0;
  double t_cp = 0;
  double e_cp = 0;
  Bits backlog = 0;   // D_{m,t}
  Bits produced = 0;  // L_{m,t}, queued as fresh for the next slot
};

struct StepOutcome {
  RewardVector reward;
  double total_energy_j = 0;
  Bits total_backlog = 0;
  std::vector<UeSlot> ues;
  Bits uav_backlog = 0;
  Bits bs_backlog = 0;
  Bits processed = 0;
};

struct EnvRngs {
  Rng fading;
  Rng los;
  Rng tasks;

  static EnvRngs from_seed(std::uint64_t master_seed);
  friend bool operator==(const EnvRngs&, const EnvRngs&) = default;
};

// Channel realisations for one slot, drawn before any action is applied.
struct ChannelDraw {
  std::vector<double> bs_fading;
  std::vector<AirDraw> air;
};

// Draw order per UE m = 0..M-1: BS fading (fading stream), LoS Bernoulli (LoS
// stream), air fading (fading stream). All channels are drawn every slot.
ChannelDraw draw_channels(const NetworkConfig& cfg, const Eigen::Vector3d& uav_after_move,
                          EnvRngs& rngs);

Eigen::Vector3d move_uav(const Geometry& geometry, const Eigen::Vector3d& uav, Direction d);

// Transition with externally supplied channel and task draws; `produced` holds
// the bits each UE generates during this slot.
std::pair<EnvState, StepOutcome> step_with(const EnvState& state, const JointAction& action,
                                           const NetworkConfig& cfg, const ChannelDraw& channels,
                                           const std::vector<Bits>& produced);

// Seeded transition. Pure apart from advancing `rngs`.
std::pair<EnvState, StepOutcome> step(const EnvState& state, const JointAction& action,
                                      const NetworkConfig& cfg, EnvRngs& rngs);

}  // namespace agmec::mec
