#include "agmec/dnn/dnn_agent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "agmec/errors.hpp"

namespace agmec::dnn {

void StateEncoder::observe(const morl::QuantizedState& s) {
  scale_ = std::max(scale_, std::abs(s.log_backlog));
}

Eigen::VectorXd StateEncoder::encode(const morl::QuantizedState& s) const {
  const double cx = 0.5 * (arena_.x_min + arena_.x_max);
  const double cy = 0.5 * (arena_.y_min + arena_.y_max);
  Eigen::VectorXd x(kInputSize);
  x << (s.position.x() - cx) / (0.5 * arena_.width()), (s.position.y() - cy) / (0.5 * arena_.height()),
      s.log_backlog / scale_;
  return x;
}

namespace {

std::vector<std::size_t> layer_sizes(const DnnAgentParams& p, std::size_t outputs) {
  std::vector<std::size_t> sizes{StateEncoder::kInputSize};
  sizes.insert(sizes.end(), p.hidden.begin(), p.hidden.end());
  sizes.push_back(outputs);
  return sizes;
}

double component(const mec::RewardVector& r, Objective o) { return o == Objective::Energy ? r.e : r.d; }

Eigen::MatrixXd encode_batch(const std::vector<Transition>& batch, const StateEncoder& enc, bool next) {
  Eigen::MatrixXd x(static_cast<Eigen::Index>(StateEncoder::kInputSize), static_cast<Eigen::Index>(batch.size()));
  for (std::size_t k = 0; k < batch.size(); ++k)
    x.col(static_cast<Eigen::Index>(k)) = enc.encode(next ? batch[k].next_state : batch[k].state);
  return x;
}

}  // namespace

Eigen::VectorXd td_targets(const std::vector<Transition>& batch, const Mlp& target,
                           const StateEncoder& encoder, double gamma, Objective objective) {
  const Eigen::MatrixXd next_q = target.forward_batch(encode_batch(batch, encoder, true));
  Eigen::VectorXd y(static_cast<Eigen::Index>(batch.size()));
  for (std::size_t k = 0; k < batch.size(); ++k) {
    const auto col = static_cast<Eigen::Index>(k);
    y[col] = component(batch[k].reward, objective) + gamma * next_q.col(col).maxCoeff();
  }
  return y;
}

std::optional<double> train_step(Mlp& net, const Mlp& target, const ReplayBuffer& buffer, Adam& adam,
                                 std::size_t N, double gamma, Objective objective,
                                 const StateEncoder& encoder, Rng& sampler) {
  if (N == 0 || buffer.size() < N) return std::nullopt;
  std::vector<Transition> batch;
  batch.reserve(N);
  for (auto idx : buffer.sample_indices(N, sampler)) batch.push_back(buffer.at(idx));

  const Eigen::VectorXd y = td_targets(batch, target, encoder, gamma, objective);
  std::vector<std::size_t> actions(N);
  for (std::size_t k = 0; k < N; ++k) actions[k] = batch[k].action;

  Eigen::VectorXd grad;
  const double loss = net.loss_and_gradient(encode_batch(batch, encoder, false), actions, y, grad);
  adam.step(net.params(), grad);
  return loss;
}

bool sync_target(const Mlp& net, Mlp& target, std::size_t period, std::size_t train_steps) {
  if (period == 0 || train_steps % period != 0) return false;
  target.params() = net.params();
  return true;
}

DnnAgent::DnnAgent(morl::ActionSpace space, DnnAgentParams params, mec::Arena arena, Rng exploration,
                   Rng init, Rng replay)
    : space_(space),
      params_(params),
      explore_rng_(std::move(exploration)),
      replay_rng_(std::move(replay)),
      encoder_(arena),
      nets_{Mlp(layer_sizes(params, space.size())), Mlp(layer_sizes(params, space.size()))},
      targets_{nets_[0], nets_[1]},
      adams_{Adam(nets_[0].params().size(), params.adam), Adam(nets_[1].params().size(), params.adam)},
      buffer_(params.replay_capacity),
      visits_(space.size()) {
  if (!(params.w_e >= 0 && params.w_d >= 0) || (params.w_e == 0 && params.w_d == 0))
    throw ContractViolation("objective weights must be >= 0 and not both zero");
  for (std::size_t k = 0; k < 2; ++k) {
    nets_[k].init_glorot(init);
    targets_[k] = nets_[k];
  }
}

Eigen::VectorXd DnnAgent::q_values(Objective o, const morl::QuantizedState& s) const {
  return nets_[i(o)].forward(encoder_.encode(s));
}

std::size_t DnnAgent::select_action(const morl::QuantizedState& s) const {
  const Eigen::VectorXd qe = q_values(Objective::Energy, s);
  const Eigen::VectorXd qd = q_values(Objective::Backlog, s);
  std::size_t best = 0;
  double best_v = -std::numeric_limits<double>::infinity();
  for (Eigen::Index a = 0; a < qe.size(); ++a) {
    const double v = params_.w_e * qe[a] + params_.w_d * qd[a];
    if (v > best_v) {
      best_v = v;
      best = static_cast<std::size_t>(a);
    }
  }
  return best;
}

morl::Decision DnnAgent::epsilon_greedy(std::size_t row, const morl::QuantizedState& s, double epsilon) {
  encoder_.observe(s);
  return morl::visit_epsilon_greedy(visits_, row, epsilon, explore_rng_, [&] { return select_action(s); });
}

bool DnnAgent::learn(const morl::QuantizedState& s_t, std::size_t a_t, const mec::RewardVector& r_next,
                     const morl::QuantizedState& s_next, bool /*explored*/) {
  if (a_t >= space_.size()) throw ContractViolation("DnnAgent::learn: action index out of range");
  encoder_.observe(s_next);
  buffer_.push({s_t, a_t, r_next, s_next});
  if (buffer_.size() < params_.batch) return false;
  for (auto o : {Objective::Energy, Objective::Backlog}) {
    const auto loss = train_step(nets_[i(o)], targets_[i(o)], buffer_, adams_[i(o)], params_.batch,
                                 params_.gamma, o, encoder_, replay_rng_);
    losses_[i(o)] = loss.value_or(0.0);
  }
  ++train_steps_;
  for (std::size_t k = 0; k < 2; ++k) sync_target(nets_[k], targets_[k], params_.target_period, train_steps_);
  return true;
}

void DnnAgent::save(CheckpointWriter& w) const {
  w.tag("dnn_agent");
  w.put(explore_rng_);
  w.put(replay_rng_);
  w.put(encoder_.log_backlog_scale());
  w.put(static_cast<std::int64_t>(train_steps_));
  w.put(losses_[0]);
  w.put(losses_[1]);
  w.newline();
  for (std::size_t k = 0; k < 2; ++k) {
    w.tag("net");
    w.put(nets_[k].params());
    w.put(targets_[k].params());
    w.newline();
    adams_[k].save(w);
  }
  buffer_.save(w);
  visits_.save(w);
}

void DnnAgent::load(CheckpointReader& r) {
  r.expect("dnn_agent");
  r.get_rng(explore_rng_);
  r.get_rng(replay_rng_);
  encoder_.set_log_backlog_scale(r.get_double());
  train_steps_ = static_cast<std::size_t>(r.get_i64());
  losses_[0] = r.get_double();
  losses_[1] = r.get_double();
  for (std::size_t k = 0; k < 2; ++k) {
    r.expect("net");
    auto p = r.get_vector();
    auto tp = r.get_vector();
    if (p.size() != nets_[k].params().size() || tp.size() != p.size())
      throw ContractViolation("checkpoint: network size mismatch");
    nets_[k].params() = std::move(p);
    targets_[k].params() = std::move(tp);
    adams_[k].load(r);
  }
  buffer_.load(r);
  visits_.load(r);
}

}  // namespace agmec::dnn
