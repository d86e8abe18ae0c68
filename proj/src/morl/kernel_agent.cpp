#include "agmec/morl/kernel_agent.hpp"

#include <limits>

#include "agmec/errors.hpp"

namespace agmec::morl {

KernelAgent::KernelAgent(ActionSpace space, KernelAgentParams params, Rng exploration)
    : space_(space),
      params_(params),
      rng_(std::move(exploration)),
      dicts_{KernelDictionary(space, params.scales, params.mu0),
             KernelDictionary(space, params.scales, params.mu0)},
      window_(params.n),
      visits_(space.size()) {
  if (!(params.w_e >= 0 && params.w_d >= 0) || (params.w_e == 0 && params.w_d == 0))
    throw ContractViolation("objective weights must be >= 0 and not both zero");
}

double KernelAgent::q_value(Objective o, const QuantizedState& s, std::size_t a) const {
  const auto& dict = dicts_[idx(o)];
  if (dict.size() == 0) return 0.0;
  return weights_[idx(o)].dot(dict.kernel_vector({s, a}));
}

Eigen::VectorXd KernelAgent::q_values(Objective o, const QuantizedState& s) const {
  const auto& dict = dicts_[idx(o)];
  const auto na = static_cast<Eigen::Index>(space_.size());
  if (dict.size() == 0) return Eigen::VectorXd::Zero(na);
  return dict.kernel_matrix(s).transpose() * weights_[idx(o)];
}

std::size_t KernelAgent::select_action(const QuantizedState& s) const {
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

Decision KernelAgent::epsilon_greedy(std::size_t row, const QuantizedState& s, double epsilon) {
  return visit_epsilon_greedy(visits_, row, epsilon, rng_, [&] { return select_action(s); });
}

void KernelAgent::update_weights(const QuantizedState& s_t, std::size_t a_t,
                                 const QuantizedState& s_next, const RewardVector& ret) {
  for (auto o : {Objective::Energy, Objective::Backlog}) {
    const auto& dict = dicts_[idx(o)];
    if (dict.size() == 0) continue;
    auto& w = weights_[idx(o)];
    const Eigen::VectorXd f = dict.kernel_vector({s_t, a_t});
    const double q_t = w.dot(f);
    const double q_next = (dict.kernel_matrix(s_next).transpose() * w).maxCoeff();
    const double avg = target_component(avg_reward_, o);
    const double td = target_component(ret, o) + params_.gamma * q_next - avg - q_t;
    w += params_.alpha * td * f;
  }
}

void KernelAgent::update_avg_reward(const QuantizedState& s_t, std::size_t a_t,
                                    const QuantizedState& s_next, const RewardVector& ret,
                                    bool explored) {
  if (explored) throw ContractViolation("average reward must not be updated after an exploratory action");
  const auto best = select_action(s_next);
  const double k = params_.k_r;
  const double de = q_value(Objective::Energy, s_next, best) - q_value(Objective::Energy, s_t, a_t);
  const double dd = q_value(Objective::Backlog, s_next, best) - q_value(Objective::Backlog, s_t, a_t);
  avg_reward_.e = avg_reward_.e * (1 - k) + k * (ret.e + de);
  avg_reward_.d = avg_reward_.d * (1 - k) + k * (ret.d + dd);
}

std::array<AldResult, 2> KernelAgent::grow_dictionaries(const QuantizedState& s, std::size_t a) {
  std::array<AldResult, 2> out;
  for (auto o : {Objective::Energy, Objective::Backlog}) {
    out[idx(o)] = dicts_[idx(o)].admit({s, a});
    if (out[idx(o)].admitted) {
      auto& w = weights_[idx(o)];
      w.conservativeResize(w.size() + 1);
      w[w.size() - 1] = 0.0;
    }
  }
  return out;
}

bool KernelAgent::learn(const QuantizedState& s_t, std::size_t a_t, const RewardVector& r_next,
                        const QuantizedState& s_next, bool explored) {
  window_.push(r_next);
  const auto ret = window_.n_step_return(params_.gamma, params_.order);
  if (ret) {
    update_weights(s_t, a_t, s_next, *ret);
    if (!explored) update_avg_reward(s_t, a_t, s_next, *ret, explored);
  }
  grow_dictionaries(s_t, a_t);
  return ret.has_value();
}

void KernelAgent::save(CheckpointWriter& w) const {
  w.tag("kernel_agent");
  w.put(rng_);
  w.put(avg_reward_.e);
  w.put(avg_reward_.d);
  w.newline();
  for (std::size_t i = 0; i < 2; ++i) {
    dicts_[i].save(w);
    w.tag("weights");
    w.put(weights_[i]);
    w.newline();
  }
  window_.save(w);
  visits_.save(w);
}

void KernelAgent::load(CheckpointReader& r) {
  r.expect("kernel_agent");
  r.get_rng(rng_);
  avg_reward_.e = r.get_double();
  avg_reward_.d = r.get_double();
  for (std::size_t i = 0; i < 2; ++i) {
    dicts_[i].load(r);
    r.expect("weights");
    weights_[i] = r.get_vector();
    if (static_cast<std::size_t>(weights_[i].size()) != dicts_[i].size())
      throw ContractViolation("checkpoint: weight/dictionary size mismatch");
  }
  window_.load(r);
  visits_.load(r);
}

}  // namespace agmec::morl
