#include "agmec/morl/n_step.hpp"

#include "agmec/errors.hpp"

namespace agmec::morl {

RewardVector discounted_window_return(std::span<const RewardVector> window, double gamma,
                                      WindowOrder order) {
  RewardVector sum;
  double weight = 1.0;
  const auto n = window.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& r = order == WindowOrder::OldestFirst ? window[i] : window[n - 1 - i];
    sum += weight * r;
    weight *= gamma;
  }
  return sum;
}

RewardWindow::RewardWindow(std::size_t n) : n_(n) {
  if (n == 0) throw ContractViolation("n-step window length must be >= 1");
}

void RewardWindow::push(const RewardVector& r) {
  buf_.push_back(r);
  if (buf_.size() > n_) buf_.pop_front();
}

std::optional<RewardVector> RewardWindow::n_step_return(double gamma, WindowOrder order) const {
  if (!ready()) return std::nullopt;
  const std::vector<RewardVector> w(buf_.begin(), buf_.end());
  return discounted_window_return(w, gamma, order);
}

void RewardWindow::save(CheckpointWriter& w) const {
  w.tag("window");
  w.put(static_cast<std::int64_t>(n_));
  w.put(static_cast<std::int64_t>(buf_.size()));
  for (const auto& r : buf_) {
    w.put(r.e);
    w.put(r.d);
  }
  w.newline();
}

void RewardWindow::load(CheckpointReader& r) {
  r.expect("window");
  n_ = static_cast<std::size_t>(r.get_i64());
  const auto count = r.get_i64();
  buf_.clear();
  for (std::int64_t i = 0; i < count; ++i) {
    RewardVector v;
    v.e = r.get_double();
    v.d = r.get_double();
    buf_.push_back(v);
  }
}

}  // namespace agmec::morl
