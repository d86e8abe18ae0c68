#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "agmec/random.hpp"

namespace agmec::dnn {

// Fully connected network with tanh hidden layers and a linear output layer.
// All parameters live in one flat vector (per layer: W column-major, then b)
// so optimiser state and target copies are plain vector operations.
class Mlp {
 public:
  explicit Mlp(std::vector<std::size_t> layer_sizes);

  // Uniform in +-sqrt(6 / (fan_in + fan_out)); biases zero.
  void init_glorot(Rng& rng);

  std::size_t input_size() const { return sizes_.front(); }
  std::size_t output_size() const { return sizes_.back(); }
  std::size_t num_layers() const { return sizes_.size() - 1; }
  const std::vector<std::size_t>& layer_sizes() const { return sizes_; }

  Eigen::VectorXd& params() { return params_; }
  const Eigen::VectorXd& params() const { return params_; }

  Eigen::Map<const Eigen::MatrixXd> weight(std::size_t layer) const;
  Eigen::Map<const Eigen::VectorXd> bias(std::size_t layer) const;
  Eigen::Map<Eigen::MatrixXd> weight(std::size_t layer);
  Eigen::Map<Eigen::VectorXd> bias(std::size_t layer);

  Eigen::VectorXd forward(const Eigen::VectorXd& x) const;
  // Columns are samples.
  Eigen::MatrixXd forward_batch(const Eigen::MatrixXd& x) const;

  // Mean squared error (1/N) sum_k (y_k - out_k[a_k])^2 over the selected
  // outputs, with its gradient w.r.t. params() written into `grad`.
  double loss_and_gradient(const Eigen::MatrixXd& x, std::span<const std::size_t> actions,
                           const Eigen::VectorXd& targets, Eigen::VectorXd& grad) const;
  double loss(const Eigen::MatrixXd& x, std::span<const std::size_t> actions,
              const Eigen::VectorXd& targets) const;

 private:
  std::vector<std::size_t> sizes_;
  std::vector<std::size_t> w_offset_, b_offset_;
  Eigen::VectorXd params_;
};

}  // namespace agmec::dnn
