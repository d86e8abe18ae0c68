#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "agmec/mec/channel.hpp"
#include "agmec/mec/queue.hpp"
#include "agmec/mec/tasks.hpp"

namespace agmec::mec {

struct ComputeParams {
  double f_ue = 8e8;
  double f_uav = 1.6e9;
  double f_bs = 1.8e9;
  double kappa_ue = 1e-28;
  double kappa_uav = 1e-27;
  double kappa_bs = 1e-28;
  double cycles_per_bit = 1e3;
  double slot_s = 2.0;
  Bits packet_bits = 1000;

  void validate() const;

  Processor ue() const { return {f_ue, kappa_ue, cycles_per_bit, slot_s}; }
  Processor uav() const { return {f_uav, kappa_uav, cycles_per_bit, slot_s}; }
  Processor bs() const { return {f_bs, kappa_bs, cycles_per_bit, slot_s}; }
};

struct Arena {
  double x_min = 0, x_max = 1000;
  double y_min = 0, y_max = 1000;

  Eigen::Vector2d clamp(const Eigen::Vector2d& p) const;
  bool contains(const Eigen::Vector2d& p) const;
  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
};

struct Geometry {
  Eigen::Vector3d uav_start{500, 500, 100};  // z is the fixed altitude H
  Eigen::Vector3d bs_pos{500, 500, 0};
  std::vector<Eigen::Vector3d> ue_pos;
  Arena arena;
  double uav_step_m = 40;

  void validate() const;
  double altitude() const { return uav_start.z(); }
};

// Immutable physical parameters of one air-ground MEC deployment.
struct NetworkConfig {
  ChannelParams channel;
  ComputeParams compute;
  Geometry geometry;
  std::vector<TaskProfile> tasks;  // one per UE

  std::size_t num_ues() const { return geometry.ue_pos.size(); }
  void validate() const;

  // Default layout for M UEs: a light cluster west of the BS (the first
  // floor(2M/5) UEs) and a heavy cluster east of it, both with period 400.
  static NetworkConfig defaults(std::size_t num_ues = 5);
};

}  // namespace agmec::mec
