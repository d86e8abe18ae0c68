#pragma once

#include <cstdint>

#include <Eigen/Core>

#include "agmec/random.hpp"

namespace agmec::mec {

using Bits = std::int64_t;

struct ChannelParams {
  double ref_pathloss_db = 39.0;  // large-scale loss at 1 m, both links
  double beta = 2.6;              // pathloss exponent
  double los_a = 9.61;
  double los_b = 0.16;
  double bandwidth_hz = 6e6;
  double noise_power_w = 1e-12;  // -90 dBm
  double tx_power_w = 1.0;       // 30 dBm

  // Throws ConfigError naming the first invalid field.
  void validate() const;

  // |h_0|^2 = 10^(-ref_pathloss_db / 10)
  double reference_gain() const;
};

double dbm_to_watts(double dbm);

// |Gamma|^2 g0 d^-beta with the fading term supplied by the caller.
double terrestrial_gain(const ChannelParams& params, double distance_m, double fading);

// Draws one unit-mean exponential fading sample from `rng`.
double terrestrial_gain(const ChannelParams& params, double distance_m, Rng& rng);

// Elevation angle is taken in degrees; r == 0 means the UAV is overhead (90 deg).
double los_probability(double altitude_m, double horizontal_m, const ChannelParams& params);

struct AirDraw {
  bool line_of_sight = true;
  double fading = 1.0;  // only applied on the NLoS branch
};

// Draw order: the LoS Bernoulli comes from `los_rng`, then one fading sample
// from `fading_rng`. The fading sample is drawn on both branches so stream
// consumption does not depend on the outcome.
AirDraw draw_air_channel(double los_probability, Rng& los_rng, Rng& fading_rng);

double air_gain(const ChannelParams& params, const Eigen::Vector3d& uav_pos,
                const Eigen::Vector3d& ue_pos, const AirDraw& draw);

double air_gain(const ChannelParams& params, const Eigen::Vector3d& uav_pos,
                const Eigen::Vector3d& ue_pos, Rng& los_rng, Rng& fading_rng);

// Shannon rate B log2(1 + g P / sigma^2) in bits/s.
double achievable_rate(double gain, const ChannelParams& params);

// min(delta_b * floor(rate * tau / delta_b), buffered)
Bits deliverable_bits(double rate_bps, double tau_s, Bits delta_b, Bits buffered);

}  // namespace agmec::mec
