#include "agmec/mec/env.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "agmec/errors.hpp"

namespace agmec::mec {

Eigen::Vector2d unit_vector(Direction d) {
  const double angle = static_cast<double>(d) * std::numbers::pi / 4.0;
  // exact axis components for the four cardinal headings
  switch (d) {
    case Direction::E: return {1, 0};
    case Direction::N: return {0, 1};
    case Direction::W: return {-1, 0};
    case Direction::S: return {0, -1};
    default: return {std::cos(angle), std::sin(angle)};
  }
}

EnvState EnvState::initial(const NetworkConfig& cfg) {
  EnvState s;
  s.uav = cfg.geometry.uav_start;
  s.ue_queues.assign(cfg.num_ues(), TaskQueue{});
  return s;
}

Bits EnvState::pending_fresh() const {
  Bits sum = uav_queue.fresh + bs_queue.fresh;
  for (const auto& q : ue_queues) sum += q.fresh;
  return sum;
}

Bits EnvState::backlog() const {
  Bits sum = uav_queue.carried + bs_queue.carried;
  for (const auto& q : ue_queues) sum += q.carried;
  return sum;
}

EnvRngs EnvRngs::from_seed(std::uint64_t master_seed) {
  return {make_stream(master_seed, Stream::EnvFading), make_stream(master_seed, Stream::EnvLos),
          make_stream(master_seed, Stream::EnvTasks)};
}

Eigen::Vector3d move_uav(const Geometry& geometry, const Eigen::Vector3d& uav, Direction d) {
  const Eigen::Vector2d next = geometry.arena.clamp(uav.head<2>() + geometry.uav_step_m * unit_vector(d));
  return {next.x(), next.y(), uav.z()};
}

ChannelDraw draw_channels(const NetworkConfig& cfg, const Eigen::Vector3d& uav, EnvRngs& rngs) {
  ChannelDraw out;
  out.bs_fading.reserve(cfg.num_ues());
  out.air.reserve(cfg.num_ues());
  for (const auto& ue : cfg.geometry.ue_pos) {
    out.bs_fading.push_back(rngs.fading.exponential());
    const double r = (uav.head<2>() - ue.head<2>()).norm();
    const double p = los_probability(uav.z() - ue.z(), r, cfg.channel);
    out.air.push_back(draw_air_channel(p, rngs.los, rngs.fading));
  }
  return out;
}

namespace {

void check_action(const JointAction& action, std::size_t num_ues) {
  if (action.offload.size() != num_ues)
    throw ContractViolation("joint action must carry exactly one offloading choice per UE");
  if (static_cast<std::size_t>(action.uav) >= kNumDirections)
    throw ContractViolation("UAV direction out of range");
  for (auto o : action.offload)
    if (static_cast<std::size_t>(o) >= kNumOffloadChoices)
      throw ContractViolation("offloading choice out of range");
}

}  // namespace

std::pair<EnvState, StepOutcome> step_with(const EnvState& state, const JointAction& action,
                                           const NetworkConfig& cfg, const ChannelDraw& channels,
                                           const std::vector<Bits>& produced) {
  const std::size_t M = cfg.num_ues();
  check_action(action, M);
  if (state.ue_queues.size() != M) throw ContractViolation("state does not match UE count");
  if (channels.bs_fading.size() != M || channels.air.size() != M || produced.size() != M)
    throw ContractViolation("channel/task draws do not match UE count");

  const auto& geo = cfg.geometry;
  const auto& cp = cfg.compute;
  const Processor ue_cpu = cp.ue();

  EnvState next = state;
  next.uav = move_uav(geo, state.uav, action.uav);

  StepOutcome out;
  out.ues.resize(M);
  std::vector<Arrival> to_uav, to_bs;

  for (std::size_t m = 0; m < M; ++m) {
    auto& slot = out.ues[m];
    const auto& ue = geo.ue_pos[m];
    slot.target = action.offload[m];
    slot.gain_bs = terrestrial_gain(cfg.channel, (ue - geo.bs_pos).norm(), channels.bs_fading[m]);
    slot.gain_uav = air_gain(cfg.channel, next.uav, ue, channels.air[m]);
    slot.los = channels.air[m].line_of_sight;
    slot.rate_bs = achievable_rate(slot.gain_bs, cfg.channel);
    slot.rate_uav = achievable_rate(slot.gain_uav, cfg.channel);

    const TaskQueue& q = state.ue_queues[m];
    if (slot.target == Offload::Local) {
      const auto local = local_process_step(q, ue_cpu);
      slot.t_cp = local.t_cp;
      slot.e_cp = local.energy_j;
      slot.backlog = local.queue.carried;
      out.processed += local.processed;
    } else {
      const double rate = slot.target == Offload::Uav ? slot.rate_uav : slot.rate_bs;
      slot.offloaded = deliverable_bits(rate, cp.slot_s, cp.packet_bits, q.total());
      if (slot.offloaded > 0) {
        slot.t_trans = static_cast<double>(slot.offloaded) / rate;
        slot.e_trans = cfg.channel.tx_power_w * slot.t_trans;
      }
      slot.backlog = q.total() - slot.offloaded;
      (slot.target == Offload::Uav ? to_uav : to_bs).push_back({m, slot.offloaded});
    }
  }

  auto serve = [&](const TaskQueue& q, const std::vector<Arrival>& arrivals, const Processor& cpu) {
    auto r = server_process_step(q, arrivals, cpu);
    for (const auto& ch : r.charges) {
      out.ues[ch.ue].t_cp = ch.t_cp;
      out.ues[ch.ue].e_cp = ch.energy_j;
    }
    out.processed += r.processed;
    return r.queue;
  };
  next.uav_queue = serve(state.uav_queue, to_uav, cp.uav());
  next.bs_queue = serve(state.bs_queue, to_bs, cp.bs());
  out.uav_backlog = next.uav_queue.carried;
  out.bs_backlog = next.bs_queue.carried;

  out.total_backlog = out.uav_backlog + out.bs_backlog;
  for (std::size_t m = 0; m < M; ++m) {
    auto& slot = out.ues[m];
    out.total_energy_j += slot.e_trans + slot.e_cp;
    out.total_backlog += slot.backlog;
    slot.produced = produced[m];
    next.ue_queues[m] = TaskQueue{slot.backlog, produced[m]};
    next.produced_total += produced[m];
  }
  next.processed_total += out.processed;
  next.last_backlog = out.total_backlog;
  next.t = state.t + 1;
  // 0.0 - x keeps an idle slot at +0.0 rather than -0.0
  out.reward = {0.0 - out.total_energy_j, 0.0 - static_cast<double>(out.total_backlog)};
  return {std::move(next), std::move(out)};
}

std::pair<EnvState, StepOutcome> step(const EnvState& state, const JointAction& action,
                                      const NetworkConfig& cfg, EnvRngs& rngs) {
  check_action(action, cfg.num_ues());
  const auto uav = move_uav(cfg.geometry, state.uav, action.uav);
  const auto channels = draw_channels(cfg, uav, rngs);
  std::vector<Bits> produced;
  produced.reserve(cfg.num_ues());
  for (const auto& profile : cfg.tasks) produced.push_back(generate_tasks(profile, state.t, rngs.tasks));
  return step_with(state, action, cfg, channels, produced);
}

}  // namespace agmec::mec
