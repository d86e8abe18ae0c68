// Acceptance suite: one PASS/FAIL line per criterion. Pass criterion numbers
// as arguments to run a subset, e.g. `acceptance 1 2 3`.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "agmec/dnn/mlp.hpp"
#include "agmec/mec/env.hpp"
#include "agmec/morl/kernel.hpp"
#include "agmec/morl/kernel_agent.hpp"
#include "agmec/morl/state_set.hpp"
#include "agmec/sim/experiment.hpp"
#include "agmec/sim/simulation.hpp"
#include "oracles/one_step_agent.hpp"
#include "oracles/slot_oracle.hpp"

using namespace agmec;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// 1 --------------------------------------------------------------------------

Outcome queue_oracle() {
  using namespace agmec::mec;
  const auto start = std::chrono::steady_clock::now();
  const auto cfg = NetworkConfig::defaults(5);
  const std::size_t M = cfg.num_ues();
  Rng rng(1001);
  auto s = EnvState::initial(cfg);
  std::size_t backlog_mismatch = 0;
  double worst = 0;
  for (int t = 0; t < 1000; ++t) {
    JointAction a{static_cast<Direction>(rng.index(kNumDirections)), {}};
    for (std::size_t m = 0; m < M; ++m) a.offload.push_back(static_cast<Offload>(rng.index(kNumOffloadChoices)));
    ChannelDraw ch;
    for (std::size_t m = 0; m < M; ++m) {
      ch.bs_fading.push_back(rng.exponential() * (rng.bernoulli(0.1) ? 1e-4 : 1.0));
      ch.air.push_back({rng.bernoulli(0.5), rng.exponential()});
    }
    std::vector<Bits> produced;
    for (std::size_t m = 0; m < M; ++m) produced.push_back(static_cast<Bits>(rng.index(3'000'000)));
    auto [next, out] = step_with(s, a, cfg, ch, produced);

    std::vector<double> ru, rb;
    for (const auto& u : out.ues) ru.push_back(u.rate_uav), rb.push_back(u.rate_bs);
    const auto ref = oracle::reference_slot(s, a, cfg, ru, rb);
    backlog_mismatch += out.total_backlog != ref.backlog || out.uav_backlog != ref.uav_backlog ||
                        out.bs_backlog != ref.bs_backlog;
    for (std::size_t m = 0; m < M; ++m) {
      backlog_mismatch += out.ues[m].backlog != ref.ue_backlog[m];
      for (auto [x, y] : {std::pair{out.ues[m].t_cp, ref.t_cp[m]}, {out.ues[m].e_cp, ref.e_cp[m]},
                          {out.ues[m].e_trans, ref.e_trans[m]}})
        if (x != y) worst = std::max(worst, rel(x, y));
    }
    if (out.total_energy_j != ref.energy) worst = std::max(worst, rel(out.total_energy_j, ref.energy));
    s = next;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {backlog_mismatch == 0 && worst <= 1e-9 && secs < 10,
          fmt("1000 slots, backlog mismatches %zu, worst time/energy rel err %.2e, %.2f s", backlog_mismatch,
              worst, secs)};
}

// 2 --------------------------------------------------------------------------

Outcome ald() {
  using namespace agmec::morl;
  Rng rng(2002);
  double worst = 0, min_eig = 1e300, worst_stored = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto sp = trial % 2 ? ActionSpace::trajectory() : ActionSpace::offloading();
    KernelDictionary dict(sp, {200, 1, 1}, 0.82);
    const std::size_t target = 1 + rng.index(50);
    auto feature = [&] {
      return Feature{{{rng.uniform() * 1500, rng.uniform() * 1500, 100}, -rng.uniform() * 4}, rng.index(sp.size())};
    };
    for (int tries = 0; dict.size() < target && tries < 100000; ++tries) dict.admit(feature());

    const Eigen::MatrixXd K = dict.gram();
    for (int q = 0; q < 5; ++q) {
      const auto x = feature();
      const Eigen::VectorXd k = dict.kernel_vector(x);
      // normal equations K l = k solved directly
      const Eigen::VectorXd l = K.fullPivLu().solve(k);
      const double ls = 1.0 - 2 * l.dot(k) + l.dot(K * l);
      worst = std::max(worst, rel(dict.test(x).delta, ls));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(K);
    min_eig = std::min(min_eig, eig.eigenvalues().minCoeff());
    for (const auto& f : dict.features()) worst_stored = std::max(worst_stored, dict.test(f).delta);
  }
  return {worst <= 1e-8 && min_eig > 0 && worst_stored <= 1e-10,
          fmt("200 dictionaries, worst delta rel err %.2e, min Gram eigenvalue %.3e, max stored-feature delta %.2e",
              worst, min_eig, worst_stored)};
}

// 3 --------------------------------------------------------------------------

Outcome n_step_reduction() {
  sim::SimConfig cfg;
  cfg.n_step = 1;
  cfg.validate();
  const auto& net = cfg.network;
  const std::size_t agents = net.num_ues() + 1;
  const std::uint64_t seed = 3;

  std::vector<morl::KernelAgent> lib;
  std::vector<oracle::OneStepAgent> ref;
  for (std::size_t i = 0; i < agents; ++i) {
    auto space = i == 0 ? morl::ActionSpace::trajectory() : morl::ActionSpace::offloading();
    lib.emplace_back(space, cfg.kernel_params(), make_stream(seed, Stream::AgentExploration, i));
    ref.emplace_back(space, cfg.kernel_params(), make_stream(seed, Stream::AgentExploration, i));
  }
  auto env = mec::EnvState::initial(net);
  auto rngs = mec::EnvRngs::from_seed(seed);
  morl::QuantizedStateSet states(cfg.mu_q, cfg.mu_d);
  std::size_t cur = states.quantize(sim::observe(env)).index;

  std::size_t diffs = 0, updates = 0;
  for (int t = 0; t < 500; ++t) {
    for (std::size_t i = 0; i < agents; ++i) lib[i].sync_states(states.size()), ref[i].sync_states(states.size());
    const auto s = states.at(cur);
    const double eps = cfg.epsilon_at(env.t);
    mec::JointAction a;
    std::vector<morl::Decision> dl(agents);
    for (std::size_t i = 0; i < agents; ++i) {
      dl[i] = lib[i].epsilon_greedy(cur, s, eps);
      const auto dr = ref[i].act(cur, s, eps);
      diffs += dr.action != dl[i].action || dr.explored != dl[i].explored;
    }
    a.uav = static_cast<mec::Direction>(dl[0].action);
    for (std::size_t i = 1; i < agents; ++i) a.offload.push_back(static_cast<mec::Offload>(dl[i].action));
    auto [next, out] = mec::step(env, a, net, rngs);
    env = next;
    cur = states.quantize(sim::observe(env)).index;
    const auto s2 = states.at(cur);
    const mec::RewardVector r{out.reward.e * cfg.reward_scale_e, out.reward.d * cfg.reward_scale_d};
    for (std::size_t i = 0; i < agents; ++i) {
      updates += lib[i].learn(s, dl[i].action, r, s2, dl[i].explored);
      ref[i].learn(s, dl[i].action, r, s2, dl[i].explored);
      for (auto o : {morl::Objective::Energy, morl::Objective::Backlog}) {
        const auto& wl = lib[i].weights(o);
        const auto& wr = ref[i].weights(static_cast<int>(o));
        diffs += wl.size() != wr.size() || (wl.size() > 0 && wl != wr);
      }
      diffs += lib[i].avg_reward().e != ref[i].avg().e || lib[i].avg_reward().d != ref[i].avg().d;
    }
  }
  return {diffs == 0 && updates == 500 * agents,
          fmt("500 slots x %zu agents, %zu updates, %zu differing decisions/weights/averages", agents, updates, diffs)};
}

// 4 --------------------------------------------------------------------------

Outcome gradients() {
  Rng rng(4004);
  double worst_dnn = 0;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::size_t> sizes{1 + rng.index(4)};
    const std::size_t hidden = 1 + rng.index(3);
    for (std::size_t h = 0; h < hidden; ++h) sizes.push_back(2 + rng.index(6));
    sizes.push_back(1 + rng.index(5));
    dnn::Mlp net(sizes);
    net.init_glorot(rng);
    const auto n = static_cast<Eigen::Index>(1 + rng.index(8));
    Eigen::MatrixXd x(static_cast<Eigen::Index>(sizes.front()), n);
    for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = 2 * rng.uniform() - 1;
    std::vector<std::size_t> a;
    Eigen::VectorXd y(n);
    for (Eigen::Index k = 0; k < n; ++k) a.push_back(rng.index(sizes.back())), y[k] = 4 * rng.uniform() - 2;

    Eigen::VectorXd g;
    net.loss_and_gradient(x, a, y, g);
    Eigen::VectorXd fd(g.size());
    for (Eigen::Index i = 0; i < g.size(); ++i) {
      const double p = net.params()[i], h = 1e-6;
      net.params()[i] = p + h;
      const double up = net.loss(x, a, y);
      net.params()[i] = p - h;
      const double down = net.loss(x, a, y);
      net.params()[i] = p;
      fd[i] = (up - down) / (2 * h);
    }
    worst_dnn = std::max(worst_dnn, (g - fd).norm() / std::max(fd.norm(), 1e-12));
  }

  morl::KernelAgentParams p;
  p.n = 1;
  p.alpha = 1e-3;
  morl::KernelAgent ag(morl::ActionSpace::trajectory(), p, Rng(1));
  auto st = [&] { return morl::QuantizedState{{rng.uniform() * 1000, rng.uniform() * 1000, 100}, -rng.uniform() * 4}; };
  for (int i = 0; i < 400; ++i) ag.grow_dictionaries(st(), rng.index(8));
  for (auto o : {morl::Objective::Energy, morl::Objective::Backlog})
    for (Eigen::Index j = 0; j < ag.weights(o).size(); ++j) ag.mutable_weights(o)[j] = 2 * rng.uniform() - 1;
  ag.set_avg_reward({-0.4, -1.5});
  double worst_kernel = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = st(), s2 = st();
    const std::size_t a = rng.index(8);
    const mec::RewardVector ret{-5 * rng.uniform(), -5 * rng.uniform()};
    auto copy = ag;
    copy.update_weights(s, a, s2, ret);
    for (auto o : {morl::Objective::Energy, morl::Objective::Backlog}) {
      const auto& dict = ag.dictionary(o);
      const Eigen::VectorXd w = ag.weights(o);
      const double r = o == morl::Objective::Energy ? ret.e : ret.d;
      const double avg = o == morl::Objective::Energy ? ag.avg_reward().e : ag.avg_reward().d;
      const double target = r + p.gamma * (dict.kernel_matrix(s2).transpose() * w).maxCoeff() - avg;
      const Eigen::VectorXd f = dict.kernel_vector({s, a});
      Eigen::VectorXd fd(w.size());
      for (Eigen::Index j = 0; j < w.size(); ++j) {
        Eigen::VectorXd wp = w, wm = w;
        wp[j] += 1e-6;
        wm[j] -= 1e-6;
        fd[j] = (0.5 * std::pow(target - wp.dot(f), 2) - 0.5 * std::pow(target - wm.dot(f), 2)) / 2e-6;
      }
      const Eigen::VectorXd expected = -p.alpha * fd;
      worst_kernel = std::max(worst_kernel, (copy.weights(o) - w - expected).norm() / expected.norm());
    }
  }
  return {worst_dnn < 1e-4 && worst_kernel < 1e-6,
          fmt("DNN worst rel err %.2e over 50 nets, kernel semi-gradient worst rel err %.2e", worst_dnn,
              worst_kernel)};
}

// 5, 6, 7, 9 share runs ---------------------------------------------------------

struct Study {
  std::vector<sim::RunSummary> base;
  std::vector<std::pair<double, double>> avg_at_9000;  // running averages before the final window
  sim::SweepResult sweep;
  bool done = false;
};

Study& study() {
  static Study s;
  if (s.done) return s;
  const sim::SimConfig cfg;
  for (auto seed : cfg.seeds) {
    std::pair<double, double> at{0, 0};
    const auto cut = cfg.timeslots - 1000;
    sim::RunOptions opts;
    opts.on_record = [&](const sim::SlotRecord& r) {
      if (r.t == cut) at = {r.avg_energy_j, r.avg_backlog_bits};
    };
    s.base.push_back(sim::run_experiment(cfg, seed, opts));
    s.avg_at_9000.push_back(at);
  }
  s.sweep = sim::sweep(cfg, {{"n1", {{"n_step", "1"}}}, {"n30", {{"n_step", "30"}}}, {"we3", {{"w_e", "3"}}}});
  s.done = true;
  return s;
}

double mean(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

Outcome convergence() {
  auto& s = study();
  double worst = 0;
  std::string per;
  for (std::size_t i = 0; i < s.base.size(); ++i) {
    const double ce = rel(s.base[i].final_avg_energy_j, s.avg_at_9000[i].first);
    const double cd = rel(s.base[i].final_avg_backlog_bits, s.avg_at_9000[i].second);
    worst = std::max({worst, ce, cd});
    per += fmt(" s%llu:%.2f%%/%.2f%%", static_cast<unsigned long long>(s.base[i].seed), 100 * ce, 100 * cd);
  }
  return {worst < 0.01, fmt("change of running avg E/D over final 1000 slots:%s (limit 1%%)", per.c_str())};
}

Outcome n_step_vs_one() {
  auto& s = study();
  const double d1 = s.sweep.mean_longterm_backlog("n1"), d30 = s.sweep.mean_longterm_backlog("n30");
  const double imp = 1 - d30 / d1;
  return {d30 < d1 && imp >= 0.10,
          fmt("long-term backlog n=1 %.4g bits, n=30 %.4g bits, improvement %.1f%% (need >= 10%%)", d1, d30,
              100 * imp)};
}

Outcome weight_sensitivity() {
  auto& s = study();
  std::vector<double> e, d;
  for (const auto& r : s.base) e.push_back(r.longterm_energy_j), d.push_back(r.longterm_backlog_bits);
  const double e1 = mean(e), d1 = mean(d);
  const double e3 = s.sweep.mean_longterm_energy("we3"), d3 = s.sweep.mean_longterm_backlog("we3");
  return {e3 < e1 && d3 > d1, fmt("w_e=1: E %.4g J, D %.4g bits; w_e=3: E %.4g J, D %.4g bits", e1, d1, e3, d3)};
}

Outcome trajectory_bias() {
  auto& s = study();
  const sim::SimConfig cfg;
  const double bs_x = cfg.network.geometry.bs_pos.x();
  double heavy_x = 0;
  for (std::size_t m = 0; m < cfg.network.num_ues(); ++m)
    if (cfg.network.tasks[m].base_bits + cfg.network.tasks[m].peak_bits >
        cfg.network.tasks[0].base_bits + cfg.network.tasks[0].peak_bits)
      heavy_x = cfg.network.geometry.ue_pos[m].x();
  const bool east = heavy_x > bs_x;
  int on_side = 0;
  std::string xs;
  for (const auto& r : s.base) {
    on_side += east ? r.tail_uav_x > bs_x : r.tail_uav_x < bs_x;
    xs += fmt(" %.0f", r.tail_uav_x);
  }
  return {on_side >= 4, fmt("tail mean x:%s m (BS at %.0f m, heavy side %s); %d of 5 on heavy side", xs.c_str(),
                            bs_x, east ? "east" : "west", on_side)};
}

// 8 --------------------------------------------------------------------------

Outcome timing() {
  const sim::SimConfig cfg;
  const auto b = sim::timing_benchmark(cfg, 0, 500, 2000);
  return {b.ratio() >= 10, fmt("per-slot decide+learn: kernel %.3g s, DNN %.3g s, ratio %.1fx (need >= 10x)",
                               b.kernel.mean_s, b.dnn.mean_s, b.ratio())};
}

// 10 -------------------------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  const auto root = fs::temp_directory_path() / "agmec_acceptance_determinism";
  fs::remove_all(root);
  std::string detail;
  bool ok = true;
  sim::SimConfig kernel;
  sim::SimConfig dnn;
  dnn.agent = sim::AgentKind::Dnn;
  dnn.timeslots = 1500;
  for (auto& [name, cfg] : {std::pair<std::string, sim::SimConfig>{"kernel", kernel}, {"dnn", dnn}}) {
    sim::run_experiment(cfg, 7, {root / name / "a", {}});
    sim::run_experiment(cfg, 7, {root / name / "b", {}});
    const auto a = slurp(root / name / "a" / "metrics.csv"), b = slurp(root / name / "b" / "metrics.csv");
    const bool same = !a.empty() && a == b;
    ok = ok && same;
    detail += fmt("%s %lld slots: %s (%zu bytes); ", name.c_str(), static_cast<long long>(cfg.timeslots),
                  same ? "identical" : "DIFFERENT", a.size());
  }
  fs::remove_all(root);
  return {ok, detail};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"queue dynamics match the FIFO packet oracle", queue_oracle},
      {"ALD residual matches least squares", ald},
      {"n=1 agent matches a one-step learner bit for bit", n_step_reduction},
      {"gradient checks", gradients},
      {"kernel agent running averages converge", convergence},
      {"n=30 lowers long-term backlog vs n=1", n_step_vs_one},
      {"w_e=3 trades backlog for energy", weight_sensitivity},
      {"kernel agent is at least 10x faster per slot than DNN", timing},
      {"UAV hovers on the heavy-cluster side", trajectory_bias},
      {"same seed gives byte-identical metrics.csv", determinism},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    if (!only.empty() && !only.count(id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %2d %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first, o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
