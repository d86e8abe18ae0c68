#include "agmec/dnn/adam.hpp"

#include <cmath>

#include "agmec/errors.hpp"

namespace agmec::dnn {

Adam::Adam(Eigen::Index num_params, AdamParams params)
    : p_(params), m_(Eigen::VectorXd::Zero(num_params)), v_(Eigen::VectorXd::Zero(num_params)) {}

void Adam::step(Eigen::VectorXd& params, const Eigen::VectorXd& grad) {
  if (params.size() != m_.size() || grad.size() != m_.size())
    throw ContractViolation("Adam: parameter/gradient size mismatch");
  ++t_;
  m_ = p_.beta1 * m_ + (1 - p_.beta1) * grad;
  v_ = p_.beta2 * v_ + (1 - p_.beta2) * grad.cwiseProduct(grad);
  const double c1 = 1 - std::pow(p_.beta1, static_cast<double>(t_));
  const double c2 = 1 - std::pow(p_.beta2, static_cast<double>(t_));
  params.array() -= p_.step_size * (m_.array() / c1) / ((v_.array() / c2).sqrt() + p_.epsilon);
}

void Adam::save(CheckpointWriter& w) const {
  w.tag("adam");
  w.put(t_);
  w.put(m_);
  w.put(v_);
  w.newline();
}

void Adam::load(CheckpointReader& r) {
  r.expect("adam");
  t_ = r.get_i64();
  m_ = r.get_vector();
  v_ = r.get_vector();
}

}  // namespace agmec::dnn
