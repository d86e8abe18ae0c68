#include "agmec/morl/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "agmec/errors.hpp"

namespace agmec::morl {

namespace {

double position_factor(const QuantizedState& x, const QuantizedState& y, const KernelScales& k) {
  return std::exp(-(x.position - y.position).squaredNorm() / (2 * k.position * k.position));
}

double backlog_factor(const QuantizedState& x, const QuantizedState& y, const KernelScales& k) {
  const double d = x.log_backlog - y.log_backlog;
  return std::exp(-d * d / (2 * k.backlog * k.backlog));
}

bool power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

double state_kernel(const QuantizedState& x, const QuantizedState& y, const KernelScales& k) {
  return position_factor(x, y, k) * backlog_factor(x, y, k);
}

double action_kernel(const ActionVector& a, const ActionVector& b, const KernelScales& k) {
  double sq = 0;
  for (std::size_t i = 0; i < a.size(); ++i) sq += (a[i] - b[i]) * (a[i] - b[i]);
  return std::exp(-sq / (2 * k.action * k.action));
}

double kernel_eval(const QuantizedState& xs, const ActionVector& xa, const QuantizedState& ys,
                   const ActionVector& ya, const KernelScales& k) {
  return state_kernel(xs, ys, k) * action_kernel(xa, ya, k);
}

KernelDictionary::KernelDictionary(ActionSpace space, KernelScales scales, double mu0)
    : space_(std::move(space)), scales_(scales), mu0_(mu0) {
  if (!(scales.position > 0 && scales.backlog > 0 && scales.action > 0))
    throw ContractViolation("kernel length scales must be > 0");
  if (!(mu0 > 0)) throw ContractViolation("ALD threshold must be > 0");
  const auto n = static_cast<Eigen::Index>(space_.size());
  action_table_.resize(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      action_table_(a, b) = action_kernel(space_.encode(a), space_.encode(b), scales_);
}

double KernelDictionary::kernel(const Feature& x, const Feature& y) const {
  return state_kernel(x.state, y.state, scales_) *
         action_table_(static_cast<Eigen::Index>(x.action), static_cast<Eigen::Index>(y.action));
}

Eigen::VectorXd KernelDictionary::kernel_vector(const Feature& x) const {
  if (x.action >= space_.size()) throw ContractViolation("action index outside the agent's space");
  Eigen::VectorXd k(static_cast<Eigen::Index>(features_.size()));
  for (std::size_t j = 0; j < features_.size(); ++j) k[static_cast<Eigen::Index>(j)] = kernel(x, features_[j]);
  return k;
}

Eigen::MatrixXd KernelDictionary::kernel_matrix(const QuantizedState& s) const {
  const auto n = static_cast<Eigen::Index>(features_.size());
  const auto na = static_cast<Eigen::Index>(space_.size());
  Eigen::MatrixXd K(n, na);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto& f = features_[static_cast<std::size_t>(j)];
    const double sk = state_kernel(s, f.state, scales_);
    const auto fa = static_cast<Eigen::Index>(f.action);
    for (Eigen::Index a = 0; a < na; ++a) K(j, a) = sk * action_table_(a, fa);
  }
  return K;
}

Eigen::MatrixXd KernelDictionary::gram() const {
  const auto n = static_cast<Eigen::Index>(features_.size());
  Eigen::MatrixXd G(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      G(i, j) = kernel(features_[static_cast<std::size_t>(i)], features_[static_cast<std::size_t>(j)]);
  return G;
}

AldResult KernelDictionary::test(const Feature& x) const {
  const double kxx = kernel(x, x);
  if (features_.empty()) return {kxx, kxx > mu0_};
  const Eigen::VectorXd k = kernel_vector(x);
  const double proj = k.dot(inv_gram_ * k);
  const double delta = std::max(0.0, kxx - proj);
  return {delta, delta > mu0_};
}

AldResult KernelDictionary::admit(const Feature& x) {
  const double kxx = kernel(x, x);
  const auto n = static_cast<Eigen::Index>(features_.size());
  if (n == 0) {
    if (!(kxx > mu0_)) return {kxx, false};
    features_.push_back(x);
    inv_gram_ = Eigen::MatrixXd::Constant(1, 1, 1.0 / kxx);
    return {kxx, true};
  }

  const Eigen::VectorXd k = kernel_vector(x);
  const Eigen::VectorXd a = inv_gram_ * k;
  const double proj = k.dot(a);
  // K^-1 is positive definite, so a negative projection means it has drifted.
  if (!std::isfinite(proj) || proj < -1e-6)
    throw InternalStateError("ALD: inverse Gram matrix inconsistent (projection " + std::to_string(proj) + ")");
  const double delta = std::max(0.0, kxx - proj);
  if (!(delta > mu0_)) return {delta, false};

  Eigen::MatrixXd next(n + 1, n + 1);
  next.topLeftCorner(n, n) = inv_gram_ + (a * a.transpose()) / delta;
  next.topRightCorner(n, 1) = -a / delta;
  next.bottomLeftCorner(1, n) = -a.transpose() / delta;
  next(n, n) = 1.0 / delta;
  inv_gram_ = std::move(next);
  features_.push_back(x);

  if (power_of_two(features_.size())) {
    const double residual = inverse_residual();
    if (residual > 1e-6)
      throw InternalStateError("ALD: inverse Gram residual " + std::to_string(residual) + " exceeds 1e-6");
  }
  return {delta, true};
}

double KernelDictionary::inverse_residual() const {
  if (features_.empty()) return 0;
  const auto n = static_cast<Eigen::Index>(features_.size());
  return (inv_gram_ * gram() - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
}

void KernelDictionary::save(CheckpointWriter& w) const {
  w.tag("dictionary");
  w.put(static_cast<std::int64_t>(features_.size()));
  for (const auto& f : features_) {
    w.put(f.state.position.x());
    w.put(f.state.position.y());
    w.put(f.state.position.z());
    w.put(f.state.log_backlog);
    w.put(static_cast<std::int64_t>(f.action));
  }
  w.put(inv_gram_);
  w.newline();
}

void KernelDictionary::load(CheckpointReader& r) {
  r.expect("dictionary");
  const auto n = r.get_i64();
  features_.clear();
  for (std::int64_t i = 0; i < n; ++i) {
    Feature f;
    f.state.position.x() = r.get_double();
    f.state.position.y() = r.get_double();
    f.state.position.z() = r.get_double();
    f.state.log_backlog = r.get_double();
    f.action = static_cast<std::size_t>(r.get_i64());
    features_.push_back(f);
  }
  inv_gram_ = r.get_matrix();
  if (inv_gram_.rows() != n) throw ContractViolation("checkpoint: inverse Gram size mismatch");
}

}  // namespace agmec::morl
