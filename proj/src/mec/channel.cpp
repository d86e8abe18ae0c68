#include "agmec/mec/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "agmec/errors.hpp"

namespace agmec::mec {

void ChannelParams::validate() const {
  if (!(beta > 0)) throw ConfigError("pathloss_exponent", "must be > 0");
  if (!(bandwidth_hz > 0)) throw ConfigError("bandwidth_hz", "must be > 0");
  if (!(noise_power_w > 0)) throw ConfigError("noise_power_dbm", "noise power must be > 0 W");
  if (!(tx_power_w > 0)) throw ConfigError("tx_power_dbm", "transmit power must be > 0 W");
  if (!(los_a > 0)) throw ConfigError("los_a", "must be > 0");
  if (!(los_b > 0)) throw ConfigError("los_b", "must be > 0");
  if (!std::isfinite(ref_pathloss_db)) throw ConfigError("ref_pathloss_db", "must be finite");
}

double ChannelParams::reference_gain() const { return std::pow(10.0, -ref_pathloss_db / 10.0); }

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double terrestrial_gain(const ChannelParams& params, double distance_m, double fading) {
  if (!(distance_m > 0)) throw std::domain_error("terrestrial_gain: distance must be > 0");
  return fading * params.reference_gain() * std::pow(distance_m, -params.beta);
}

double terrestrial_gain(const ChannelParams& params, double distance_m, Rng& rng) {
  if (!(distance_m > 0)) throw std::domain_error("terrestrial_gain: distance must be > 0");
  return terrestrial_gain(params, distance_m, rng.exponential());
}

double los_probability(double altitude_m, double horizontal_m, const ChannelParams& params) {
  const double theta_deg =
      horizontal_m <= 0 ? 90.0 : std::atan(altitude_m / horizontal_m) * 180.0 / std::numbers::pi;
  return 1.0 / (1.0 + params.los_a * std::exp(-params.los_b * (theta_deg - params.los_a)));
}

AirDraw draw_air_channel(double p_los, Rng& los_rng, Rng& fading_rng) {
  AirDraw d;
  d.line_of_sight = los_rng.bernoulli(p_los);
  d.fading = fading_rng.exponential();
  return d;
}

double air_gain(const ChannelParams& params, const Eigen::Vector3d& uav_pos,
                const Eigen::Vector3d& ue_pos, const AirDraw& draw) {
  const double d = (uav_pos - ue_pos).norm();
  if (!(d > 0)) throw std::domain_error("air_gain: UAV and UE positions coincide");
  if (draw.line_of_sight) return params.reference_gain() / (d * d);
  return draw.fading * params.reference_gain() * std::pow(d, -params.beta);
}

double air_gain(const ChannelParams& params, const Eigen::Vector3d& uav_pos,
                const Eigen::Vector3d& ue_pos, Rng& los_rng, Rng& fading_rng) {
  if (!((uav_pos - ue_pos).norm() > 0))
    throw std::domain_error("air_gain: UAV and UE positions coincide");
  const double r = (uav_pos.head<2>() - ue_pos.head<2>()).norm();
  const double altitude = uav_pos.z() - ue_pos.z();
  const auto draw = draw_air_channel(los_probability(altitude, r, params), los_rng, fading_rng);
  return air_gain(params, uav_pos, ue_pos, draw);
}

double achievable_rate(double gain, const ChannelParams& params) {
  if (gain < 0) throw ContractViolation("achievable_rate: negative gain");
  return params.bandwidth_hz * std::log2(1.0 + gain * params.tx_power_w / params.noise_power_w);
}

Bits deliverable_bits(double rate_bps, double tau_s, Bits delta_b, Bits buffered) {
  if (rate_bps < 0 || tau_s < 0 || delta_b <= 0 || buffered < 0)
    throw ContractViolation("deliverable_bits: inputs must be nonnegative, delta_b positive");
  const double packets = std::floor(rate_bps * tau_s / static_cast<double>(delta_b));
  // A huge rate cannot exceed the buffer anyway; clamp before the integer cast.
  const double cap = static_cast<double>(buffered) / static_cast<double>(delta_b) + 1.0;
  const auto budget = static_cast<Bits>(std::min(packets, cap)) * delta_b;
  return std::min(budget, buffered);
}

}  // namespace agmec::mec
