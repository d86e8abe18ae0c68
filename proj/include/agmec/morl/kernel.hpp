#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "agmec/checkpoint_io.hpp"
#include "agmec/morl/action_space.hpp"
#include "agmec/morl/state_set.hpp"

namespace agmec::morl {

// Characteristic length scales of the product Gaussian kernel.
struct KernelScales {
  double position = 200;  // sigma_s1, metres
  double backlog = 1;     // sigma_s2, log units
  double action = 1;      // sigma_a
};

// exp(-|dq|^2 / 2 s1^2) * exp(-(dd')^2 / 2 s2^2)
double state_kernel(const QuantizedState& x, const QuantizedState& y, const KernelScales& k);
// exp(-|da|^2 / 2 sa^2)
double action_kernel(const ActionVector& a, const ActionVector& b, const KernelScales& k);

// Full product kernel on [q, d', a] samples, in (0, 1].
double kernel_eval(const QuantizedState& xs, const ActionVector& xa, const QuantizedState& ys,
                   const ActionVector& ya, const KernelScales& k);

struct Feature {
  QuantizedState state;
  std::size_t action = 0;
};

struct AldResult {
  double delta = 0;
  bool admitted = false;
};

// Sparse kernel dictionary grown by the approximate-linear-dependence test,
// with an incrementally maintained inverse Gram matrix.
class KernelDictionary {
 public:
  KernelDictionary(ActionSpace space, KernelScales scales, double mu0);

  std::size_t size() const { return features_.size(); }
  const std::vector<Feature>& features() const { return features_; }
  const Eigen::MatrixXd& inverse_gram() const { return inv_gram_; }
  const KernelScales& scales() const { return scales_; }
  const ActionSpace& actions() const { return space_; }
  double threshold() const { return mu0_; }

  double kernel(const Feature& x, const Feature& y) const;
  Eigen::VectorXd kernel_vector(const Feature& x) const;
  // Column a holds kernel_vector({s, a}); one exp pair per stored feature.
  Eigen::MatrixXd kernel_matrix(const QuantizedState& s) const;
  Eigen::MatrixXd gram() const;

  // delta = k(x,x) - k_x^T K^-1 k_x, clamped at 0. Does not modify the dictionary.
  AldResult test(const Feature& x) const;
  // Appends x when delta > mu0. Throws InternalStateError if the cached
  // inverse is found inconsistent with the stored features.
  AldResult admit(const Feature& x);

  // max |K^-1 K - I|, O(n^3).
  double inverse_residual() const;

  void save(CheckpointWriter& w) const;
  void load(CheckpointReader& r);

 private:
  ActionSpace space_;
  KernelScales scales_;
  double mu0_;
  Eigen::MatrixXd action_table_;
  std::vector<Feature> features_;
  Eigen::MatrixXd inv_gram_;
};

}  // namespace agmec::morl
