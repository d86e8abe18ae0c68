#include "agmec/dnn/mlp.hpp"

#include <cmath>

#include "agmec/errors.hpp"

namespace agmec::dnn {

Mlp::Mlp(std::vector<std::size_t> layer_sizes) : sizes_(std::move(layer_sizes)) {
  if (sizes_.size() < 2) throw ContractViolation("Mlp needs at least an input and an output layer");
  std::size_t offset = 0;
  for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
    if (sizes_[l] == 0 || sizes_[l + 1] == 0) throw ContractViolation("Mlp layer sizes must be > 0");
    w_offset_.push_back(offset);
    offset += sizes_[l] * sizes_[l + 1];
    b_offset_.push_back(offset);
    offset += sizes_[l + 1];
  }
  params_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(offset));
}

void Mlp::init_glorot(Rng& rng) {
  for (std::size_t l = 0; l < num_layers(); ++l) {
    const double limit = std::sqrt(6.0 / static_cast<double>(sizes_[l] + sizes_[l + 1]));
    auto w = weight(l);
    for (Eigen::Index j = 0; j < w.cols(); ++j)
      for (Eigen::Index i = 0; i < w.rows(); ++i) w(i, j) = limit * (2.0 * rng.uniform() - 1.0);
    bias(l).setZero();
  }
}

Eigen::Map<const Eigen::MatrixXd> Mlp::weight(std::size_t l) const {
  return {params_.data() + w_offset_.at(l), static_cast<Eigen::Index>(sizes_[l + 1]),
          static_cast<Eigen::Index>(sizes_[l])};
}

Eigen::Map<const Eigen::VectorXd> Mlp::bias(std::size_t l) const {
  return {params_.data() + b_offset_.at(l), static_cast<Eigen::Index>(sizes_[l + 1])};
}

Eigen::Map<Eigen::MatrixXd> Mlp::weight(std::size_t l) {
  return {params_.data() + w_offset_.at(l), static_cast<Eigen::Index>(sizes_[l + 1]),
          static_cast<Eigen::Index>(sizes_[l])};
}

Eigen::Map<Eigen::VectorXd> Mlp::bias(std::size_t l) {
  return {params_.data() + b_offset_.at(l), static_cast<Eigen::Index>(sizes_[l + 1])};
}

Eigen::VectorXd Mlp::forward(const Eigen::VectorXd& x) const {
  return forward_batch(x);
}

Eigen::MatrixXd Mlp::forward_batch(const Eigen::MatrixXd& x) const {
  if (static_cast<std::size_t>(x.rows()) != input_size())
    throw ContractViolation("Mlp input dimension mismatch");
  Eigen::MatrixXd a = x;
  for (std::size_t l = 0; l < num_layers(); ++l) {
    Eigen::MatrixXd z = weight(l) * a;
    z.colwise() += bias(l);
    a = (l + 1 < num_layers()) ? Eigen::MatrixXd(z.array().tanh()) : std::move(z);
  }
  return a;
}

double Mlp::loss(const Eigen::MatrixXd& x, std::span<const std::size_t> actions,
                 const Eigen::VectorXd& targets) const {
  const Eigen::MatrixXd out = forward_batch(x);
  double sum = 0;
  for (Eigen::Index k = 0; k < x.cols(); ++k) {
    const double e = targets[k] - out(static_cast<Eigen::Index>(actions[static_cast<std::size_t>(k)]), k);
    sum += e * e;
  }
  return sum / static_cast<double>(x.cols());
}

double Mlp::loss_and_gradient(const Eigen::MatrixXd& x, std::span<const std::size_t> actions,
                              const Eigen::VectorXd& targets, Eigen::VectorXd& grad) const {
  const auto n = x.cols();
  if (static_cast<std::size_t>(x.rows()) != input_size())
    throw ContractViolation("Mlp input dimension mismatch");
  if (static_cast<Eigen::Index>(actions.size()) != n || targets.size() != n)
    throw ContractViolation("Mlp batch, action and target counts differ");

  const std::size_t L = num_layers();
  std::vector<Eigen::MatrixXd> act(L + 1);
  act[0] = x;
  for (std::size_t l = 0; l < L; ++l) {
    Eigen::MatrixXd z = weight(l) * act[l];
    z.colwise() += bias(l);
    act[l + 1] = (l + 1 < L) ? Eigen::MatrixXd(z.array().tanh()) : std::move(z);
  }

  const double inv_n = 1.0 / static_cast<double>(n);
  Eigen::MatrixXd delta = Eigen::MatrixXd::Zero(act[L].rows(), n);
  double sum = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto a = static_cast<Eigen::Index>(actions[static_cast<std::size_t>(k)]);
    if (a >= act[L].rows()) throw ContractViolation("Mlp action index out of range");
    const double e = targets[k] - act[L](a, k);
    sum += e * e;
    delta(a, k) = -2.0 * e * inv_n;
  }

  grad.setZero(params_.size());
  for (std::size_t l = L; l-- > 0;) {
    Eigen::Map<Eigen::MatrixXd> gw(grad.data() + w_offset_[l], static_cast<Eigen::Index>(sizes_[l + 1]),
                                   static_cast<Eigen::Index>(sizes_[l]));
    Eigen::Map<Eigen::VectorXd> gb(grad.data() + b_offset_[l], static_cast<Eigen::Index>(sizes_[l + 1]));
    gw.noalias() = delta * act[l].transpose();
    gb = delta.rowwise().sum();
    if (l > 0) {
      Eigen::MatrixXd back = weight(l).transpose() * delta;
      delta = back.array() * (1.0 - act[l].array().square());
    }
  }
  return sum * inv_n;
}

}  // namespace agmec::dnn
