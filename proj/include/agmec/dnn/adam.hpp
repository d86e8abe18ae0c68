#pragma once

#include <cstdint>

#include <Eigen/Core>

#include "agmec/checkpoint_io.hpp"

namespace agmec::dnn {

struct AdamParams {
  double step_size = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

class Adam {
 public:
  Adam(Eigen::Index num_params, AdamParams params);

  void step(Eigen::VectorXd& params, const Eigen::VectorXd& grad);

  std::int64_t steps() const { return t_; }
  const Eigen::VectorXd& first_moment() const { return m_; }
  const Eigen::VectorXd& second_moment() const { return v_; }
  const AdamParams& hyper() const { return p_; }

  void save(CheckpointWriter& w) const;
  void load(CheckpointReader& r);

 private:
  AdamParams p_;
  std::int64_t t_ = 0;
  Eigen::VectorXd m_, v_;
};

}  // namespace agmec::dnn
