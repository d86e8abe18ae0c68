#include "agmec/mec/network_config.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "agmec/errors.hpp"

namespace agmec::mec {

void ComputeParams::validate() const {
  if (!(f_ue > 0)) throw ConfigError("f_ue_hz", "must be > 0");
  if (!(f_uav > 0)) throw ConfigError("f_uav_hz", "must be > 0");
  if (!(f_bs > 0)) throw ConfigError("f_bs_hz", "must be > 0");
  if (!(kappa_ue > 0)) throw ConfigError("kappa_ue", "must be > 0");
  if (!(kappa_uav > 0)) throw ConfigError("kappa_uav", "must be > 0");
  if (!(kappa_bs > 0)) throw ConfigError("kappa_bs", "must be > 0");
  if (!(cycles_per_bit > 0)) throw ConfigError("cycles_per_bit", "must be > 0");
  if (!(slot_s > 0)) throw ConfigError("slot_s", "must be > 0");
  if (packet_bits < 1) throw ConfigError("packet_bits", "must be a positive integer");
}

Eigen::Vector2d Arena::clamp(const Eigen::Vector2d& p) const {
  return {std::clamp(p.x(), x_min, x_max), std::clamp(p.y(), y_min, y_max)};
}

bool Arena::contains(const Eigen::Vector2d& p) const {
  return p.x() >= x_min && p.x() <= x_max && p.y() >= y_min && p.y() <= y_max;
}

void Geometry::validate() const {
  if (!(arena.x_max > arena.x_min)) throw ConfigError("arena_width_m", "must be > 0");
  if (!(arena.y_max > arena.y_min)) throw ConfigError("arena_height_m", "must be > 0");
  if (!(uav_start.z() > 0)) throw ConfigError("uav_altitude_m", "must be > 0");
  if (!arena.contains(uav_start.head<2>())) throw ConfigError("uav_x0_m", "UAV start outside arena");
  if (!(uav_step_m > 0)) throw ConfigError("uav_step_m", "must be > 0");
  if (ue_pos.empty()) throw ConfigError("num_ues", "must be >= 1");
  for (std::size_t m = 0; m < ue_pos.size(); ++m) {
    const auto key = "ue" + std::to_string(m + 1);
    if (!std::isfinite(ue_pos[m].x()) || !std::isfinite(ue_pos[m].y()))
      throw ConfigError(key + ".x_m", "position must be finite");
    if ((ue_pos[m] - bs_pos).norm() <= 0) throw ConfigError(key + ".x_m", "UE coincides with BS");
  }
}

void NetworkConfig::validate() const {
  channel.validate();
  compute.validate();
  geometry.validate();
  if (tasks.size() != num_ues()) throw ConfigError("num_ues", "task profile count differs from UE count");
  for (std::size_t m = 0; m < tasks.size(); ++m) tasks[m].validate("ue" + std::to_string(m + 1));
}

NetworkConfig NetworkConfig::defaults(std::size_t num_ues) {
  NetworkConfig cfg;
  const std::size_t light = (2 * num_ues) / 5;
  const std::size_t heavy = num_ues - light;
  auto spread = [](std::size_t i, std::size_t n) {
    return n <= 1 ? 0.0 : -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n - 1);
  };
  for (std::size_t i = 0; i < light; ++i) {
    cfg.geometry.ue_pos.emplace_back(250.0, 500.0 + 80.0 * spread(i, light), 0.0);
    TaskProfile p;
    p.base_bits = 2e5;
    p.peak_bits = 6e5;
    p.period = 400;
    p.phase = 200;
    p.jitter = 0.1;
    cfg.tasks.push_back(p);
  }
  for (std::size_t i = 0; i < heavy; ++i) {
    cfg.geometry.ue_pos.emplace_back(850.0, 500.0 + 120.0 * spread(i, heavy), 0.0);
    TaskProfile p;
    p.base_bits = 8e5;
    p.peak_bits = 2e6;
    p.period = 400;
    p.phase = 0;
    p.jitter = 0.1;
    cfg.tasks.push_back(p);
  }
  return cfg;
}

}  // namespace agmec::mec
