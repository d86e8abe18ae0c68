#include "agmec/sim/simulation.hpp"

#include <chrono>

#include "agmec/errors.hpp"

namespace agmec::sim {

namespace {

using Clock = std::chrono::steady_clock;

double seconds(Clock::duration d) { return std::chrono::duration<double>(d).count(); }

constexpr const char* kMagic = "agmec-checkpoint-v1";

void put_queue(CheckpointWriter& w, const mec::TaskQueue& q) {
  w.put(static_cast<std::int64_t>(q.carried));
  w.put(static_cast<std::int64_t>(q.fresh));
}

mec::TaskQueue get_queue(CheckpointReader& r) {
  mec::TaskQueue q;
  q.carried = r.get_i64();
  q.fresh = r.get_i64();
  return q;
}

}  // namespace

morl::QuantizedState observe(const mec::EnvState& env) {
  return {env.uav, morl::log_backlog_feature(env.last_backlog)};
}

Simulation::Simulation(SimConfig cfg, std::uint64_t seed)
    : cfg_(std::move(cfg)),
      seed_(seed),
      env_(mec::EnvState::initial(cfg_.network)),
      rngs_(mec::EnvRngs::from_seed(seed)),
      states_(cfg_.mu_q, cfg_.mu_d) {
  cfg_.validate();
  const std::size_t agents = num_agents();
  for (std::size_t i = 0; i < agents; ++i) {
    auto space = i == 0 ? morl::ActionSpace::trajectory() : morl::ActionSpace::offloading();
    auto explore = make_stream(seed, Stream::AgentExploration, i);
    if (cfg_.agent == AgentKind::Kernel) {
      kernel_.emplace_back(std::move(space), cfg_.kernel_params(), explore);
    } else {
      dnn_.emplace_back(std::move(space), cfg_.dnn_params(), cfg_.network.geometry.arena, explore,
                        make_stream(seed, Stream::DnnInit, i), make_stream(seed, Stream::ReplaySampling, i));
    }
  }
  current_ = states_.quantize(observe(env_)).index;
  sync_agents();
}

void Simulation::sync_agents() {
  for (auto& a : kernel_) a.sync_states(states_.size());
  for (auto& a : dnn_) a.sync_states(states_.size());
}

SlotRecord Simulation::step() {
  const std::size_t agents = num_agents();
  const double eps = cfg_.epsilon_at(env_.t);
  const morl::QuantizedState s_t = states_.at(current_);

  SlotRecord rec;
  rec.actions.resize(agents);
  rec.explored.resize(agents);
  std::vector<morl::Decision> decisions(agents);

  const auto t0 = Clock::now();
  for (std::size_t i = 0; i < agents; ++i)
    decisions[i] = cfg_.agent == AgentKind::Kernel ? kernel_[i].epsilon_greedy(current_, s_t, eps)
                                                   : dnn_[i].epsilon_greedy(current_, s_t, eps);
  const auto t1 = Clock::now();

  mec::JointAction action;
  action.uav = static_cast<mec::Direction>(decisions[0].action);
  for (std::size_t i = 1; i < agents; ++i) action.offload.push_back(static_cast<mec::Offload>(decisions[i].action));
  auto [next, outcome] = mec::step(env_, action, cfg_.network, rngs_);
  env_ = std::move(next);
  last_ = std::move(outcome);

  const auto t2 = Clock::now();
  const std::size_t next_index = states_.quantize(observe(env_)).index;
  sync_agents();
  const morl::QuantizedState s_next = states_.at(next_index);
  const auto t3 = Clock::now();

  const mec::RewardVector scaled{last_.reward.e * cfg_.reward_scale_e, last_.reward.d * cfg_.reward_scale_d};
  for (std::size_t i = 0; i < agents; ++i) {
    if (cfg_.agent == AgentKind::Kernel)
      kernel_[i].learn(s_t, decisions[i].action, scaled, s_next, decisions[i].explored);
    else
      dnn_[i].learn(s_t, decisions[i].action, scaled, s_next, decisions[i].explored);
  }
  const auto t4 = Clock::now();
  current_ = next_index;

  avg_e_.add(last_.total_energy_j);
  avg_d_.add(static_cast<double>(last_.total_backlog));

  rec.t = env_.t;
  rec.energy_j = last_.total_energy_j;
  rec.backlog_bits = last_.total_backlog;
  rec.avg_energy_j = avg_e_.mean();
  rec.avg_backlog_bits = avg_d_.mean();
  rec.uav_x = env_.uav.x();
  rec.uav_y = env_.uav.y();
  for (std::size_t i = 0; i < agents; ++i) {
    rec.actions[i] = static_cast<int>(decisions[i].action);
    rec.explored[i] = decisions[i].explored ? 1 : 0;
    if (cfg_.agent == AgentKind::Kernel) {
      rec.diag_e.push_back(static_cast<double>(kernel_[i].dictionary(morl::Objective::Energy).size()));
      rec.diag_d.push_back(static_cast<double>(kernel_[i].dictionary(morl::Objective::Backlog).size()));
    } else {
      rec.diag_e.push_back(dnn_[i].last_loss(morl::Objective::Energy));
      rec.diag_d.push_back(dnn_[i].last_loss(morl::Objective::Backlog));
    }
  }
  rec.t_decide_s = seconds((t1 - t0) + (t3 - t2));
  rec.t_learn_s = seconds(t4 - t3);
  return rec;
}

void Simulation::save(std::ostream& out) const {
  CheckpointWriter w(out);
  w.tag(kMagic);
  w.put(cfg_.hash());
  w.put(seed_);
  w.newline();
  w.tag("env");
  w.put(Eigen::VectorXd(env_.uav));
  w.put(static_cast<std::int64_t>(env_.t));
  w.put(static_cast<std::int64_t>(env_.last_backlog));
  w.put(static_cast<std::int64_t>(env_.produced_total));
  w.put(static_cast<std::int64_t>(env_.processed_total));
  put_queue(w, env_.uav_queue);
  put_queue(w, env_.bs_queue);
  w.put(static_cast<std::uint64_t>(env_.ue_queues.size()));
  for (const auto& q : env_.ue_queues) put_queue(w, q);
  w.newline();
  w.tag("rngs");
  w.put(rngs_.fading);
  w.put(rngs_.los);
  w.put(rngs_.tasks);
  w.newline();
  states_.save(w);
  w.tag("loop");
  w.put(static_cast<std::uint64_t>(current_));
  w.put(avg_e_.mean());
  w.put(static_cast<std::int64_t>(avg_e_.count()));
  w.put(avg_d_.mean());
  w.put(static_cast<std::int64_t>(avg_d_.count()));
  w.newline();
  for (const auto& a : kernel_) a.save(w);
  for (const auto& a : dnn_) a.save(w);
}

void Simulation::load(std::istream& in) {
  CheckpointReader r(in);
  r.expect(kMagic);
  if (r.get_u64() != cfg_.hash()) throw ConfigError("config", "checkpoint was written with a different config");
  if (r.get_u64() != seed_) throw ConfigError("seed", "checkpoint was written with a different seed");
  r.expect("env");
  const Eigen::VectorXd uav = r.get_vector();
  if (uav.size() != 3) throw InternalStateError("checkpoint: bad UAV position");
  env_.uav = uav;
  env_.t = r.get_i64();
  env_.last_backlog = r.get_i64();
  env_.produced_total = r.get_i64();
  env_.processed_total = r.get_i64();
  env_.uav_queue = get_queue(r);
  env_.bs_queue = get_queue(r);
  const auto m = r.get_u64();
  if (m != cfg_.network.num_ues()) throw InternalStateError("checkpoint: UE count mismatch");
  env_.ue_queues.clear();
  for (std::uint64_t i = 0; i < m; ++i) env_.ue_queues.push_back(get_queue(r));
  r.expect("rngs");
  r.get_rng(rngs_.fading);
  r.get_rng(rngs_.los);
  r.get_rng(rngs_.tasks);
  states_.load(r);
  r.expect("loop");
  current_ = r.get_u64();
  const double me = r.get_double();
  const auto ne = r.get_i64();
  const double md = r.get_double();
  const auto nd = r.get_i64();
  avg_e_ = RunningAverage::restore(me, ne);
  avg_d_ = RunningAverage::restore(md, nd);
  for (auto& a : kernel_) a.load(r);
  for (auto& a : dnn_) a.load(r);
}

}  // namespace agmec::sim
