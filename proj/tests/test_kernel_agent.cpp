#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "agmec/errors.hpp"
#include "agmec/morl/kernel_agent.hpp"

using namespace agmec;
using namespace agmec::morl;

namespace {

QuantizedState st(double x, double d) { return {{x, 0, 100}, d}; }

KernelAgentParams params(std::size_t n = 1) {
  KernelAgentParams p;
  p.n = n;
  p.alpha = 0.1;
  p.k_r = 0.05;
  return p;
}

}  // namespace

TEST_CASE("empty agent values everything at zero and picks the lowest index") {
  KernelAgent ag(ActionSpace::trajectory(), params(), Rng(1));
  CHECK(ag.q_value(Objective::Energy, st(0, 0), 3) == 0.0);
  CHECK(ag.select_action(st(0, 0)) == 0);
}

TEST_CASE("no update fires until the window is full") {
  KernelAgent ag(ActionSpace::offloading(), params(5), Rng(1));
  ag.sync_states(1);
  for (int t = 0; t < 4; ++t) CHECK_FALSE(ag.learn(st(0, 0), 1, {-1, -1}, st(0, 0), false));
  CHECK(ag.avg_reward() == RewardVector{});
  CHECK(ag.learn(st(0, 0), 1, {-1, -1}, st(0, 0), false));
}

TEST_CASE("admitted features start at zero weight") {
  KernelAgent ag(ActionSpace::offloading(), params(), Rng(1));
  ag.learn(st(0, 0), 0, {-1, -2}, st(0, 0), false);
  REQUIRE(ag.dictionary(Objective::Energy).size() == 1);
  CHECK(ag.weights(Objective::Energy)[0] == 0.0);
  const double before = ag.q_value(Objective::Backlog, st(5000, 0), 2);
  ag.grow_dictionaries(st(5000, 0), 2);
  CHECK(ag.q_value(Objective::Backlog, st(5000, 0), 2) == before);
}

TEST_CASE("two-state chain: one update by hand") {
  // One feature per state, far apart so kernels between them vanish.
  auto p = params();
  p.alpha = 0.5;
  p.gamma = 0.3;
  p.k_r = 0.1;
  KernelAgent ag(ActionSpace::offloading(), p, Rng(1));
  const auto A = st(0, 0), B = st(100000, 0);
  ag.grow_dictionaries(A, 0);
  ag.grow_dictionaries(B, 0);
  ag.mutable_weights(Objective::Energy) << 1.0, 2.0;
  ag.mutable_weights(Objective::Backlog) << -1.0, 4.0;
  ag.set_avg_reward({0.5, -0.5});
  ag.learn(A, 0, {-3.0, -1.0}, B, false);
  // energy: td = -3 + 0.3*2 - 0.5 - 1 = -3.9 ; w_A = 1 + 0.5*(-3.9) = -0.95
  CHECK(ag.weights(Objective::Energy)[0] == doctest::Approx(-0.95));
  CHECK(ag.weights(Objective::Energy)[1] == doctest::Approx(2.0));
  // backlog: td = -1 + 0.3*4 + 0.5 + 1 = 1.7 ; w_A = -1 + 0.85 = -0.15
  CHECK(ag.weights(Objective::Backlog)[0] == doctest::Approx(-0.15));
  // greedy at B is action 0 (only feature). Average reward uses updated weights:
  // e: 0.5*0.9 + 0.1*(-3 + 2 - (-0.95)) = 0.445
  // d: -0.5*0.9 + 0.1*(-1 + 4 - (-0.15)) = -0.135
  CHECK(ag.avg_reward().e == doctest::Approx(0.445));
  CHECK(ag.avg_reward().d == doctest::Approx(-0.135));

  // an exploratory step leaves the average reward alone
  const auto avg = ag.avg_reward();
  ag.learn(B, 0, {-1, -1}, A, true);
  CHECK(ag.avg_reward() == avg);
  CHECK_THROWS_AS(ag.update_avg_reward(A, 0, B, {-1, -1}, true), ContractViolation);
}

TEST_CASE("weight step equals the finite-difference gradient of the half-squared TD error") {
  Rng rng(3);
  auto p = params();
  p.alpha = 1e-3;
  KernelAgent ag(ActionSpace::trajectory(), p, Rng(2));
  for (int i = 0; i < 400; ++i)
    ag.grow_dictionaries(st(rng.uniform() * 2000, -rng.uniform() * 3), rng.index(8));
  for (auto o : {Objective::Energy, Objective::Backlog})
    for (Eigen::Index j = 0; j < ag.weights(o).size(); ++j) ag.mutable_weights(o)[j] = rng.uniform() * 2 - 1;
  ag.set_avg_reward({-0.7, -2.0});

  for (int trial = 0; trial < 25; ++trial) {
    const auto s = st(rng.uniform() * 2000, -rng.uniform() * 3), s2 = st(rng.uniform() * 2000, -rng.uniform() * 3);
    const std::size_t a = rng.index(8);
    const RewardVector ret{-rng.uniform() * 5, -rng.uniform() * 5};
    KernelAgent copy = ag;
    copy.update_weights(s, a, s2, ret);
    for (auto o : {Objective::Energy, Objective::Backlog}) {
      const auto& dict = ag.dictionary(o);
      const Eigen::VectorXd w = ag.weights(o);
      const double r = o == Objective::Energy ? ret.e : ret.d;
      const double avg = o == Objective::Energy ? ag.avg_reward().e : ag.avg_reward().d;
      // frozen target
      const double y = r + p.gamma * (dict.kernel_matrix(s2).transpose() * w).maxCoeff() - avg;
      const Eigen::VectorXd f = dict.kernel_vector({s, a});
      auto loss = [&](const Eigen::VectorXd& v) { return 0.5 * std::pow(y - v.dot(f), 2); };
      Eigen::VectorXd fd(w.size());
      for (Eigen::Index j = 0; j < w.size(); ++j) {
        const double h = 1e-6;
        Eigen::VectorXd wp = w, wm = w;
        wp[j] += h;
        wm[j] -= h;
        fd[j] = (loss(wp) - loss(wm)) / (2 * h);
      }
      const Eigen::VectorXd step = copy.weights(o) - w;
      const Eigen::VectorXd expected = -p.alpha * fd;
      CHECK((step - expected).norm() / expected.norm() < 1e-6);
    }
  }
}

TEST_CASE("improved epsilon-greedy explores only unvisited actions") {
  KernelAgent ag(ActionSpace::trajectory(), params(), Rng(11));
  const int rows = 20000;
  ag.sync_states(rows);
  int explored = 0;
  std::vector<int> counts(8, 0);
  for (int r = 0; r < rows; ++r) {
    const auto d = ag.epsilon_greedy(r, st(0, 0), 0.3);
    explored += d.explored;
    if (d.explored) ++counts[d.action];
    CHECK(ag.visits().visited(r, d.action));
  }
  // fresh rows: exploration happens with probability epsilon, uniformly over all 8
  CHECK(std::abs(explored / double(rows) - 0.3) < 5 * std::sqrt(0.3 * 0.7 / rows));
  for (int c : counts) CHECK(std::abs(c - explored / 8.0) < 5 * std::sqrt(explored / 8.0));

  // a row with every action visited always acts greedily
  for (int k = 0; k < 100; ++k) ag.epsilon_greedy(0, st(0, 0), 1.0);
  for (int k = 0; k < 50; ++k) CHECK_FALSE(ag.epsilon_greedy(0, st(0, 0), 1.0).explored);

  // exploration only picks never-tried actions
  KernelAgent b(ActionSpace::offloading(), params(), Rng(5));
  b.sync_states(1);
  std::set<std::size_t> seen;
  for (int k = 0; k < 3; ++k) {
    const auto d = b.epsilon_greedy(0, st(0, 0), 1.0);
    CHECK(d.explored);
    CHECK(seen.insert(d.action).second);
  }
  CHECK_FALSE(b.epsilon_greedy(0, st(0, 0), 1.0).explored);
}

TEST_CASE("agent checkpoint resumes bit-identically") {
  Rng rng(4);
  KernelAgent a(ActionSpace::offloading(), params(3), Rng(9));
  a.sync_states(50);
  auto drive = [&](KernelAgent& ag, Rng& r, int steps) {
    for (int i = 0; i < steps; ++i) {
      const auto s = st(r.uniform() * 1000, -r.uniform() * 3);
      const auto d = ag.epsilon_greedy(r.index(50), s, 0.2);
      ag.learn(s, d.action, {-r.uniform(), -r.uniform() * 10}, st(r.uniform() * 1000, -r.uniform() * 3), d.explored);
    }
  };
  drive(a, rng, 300);
  std::stringstream ss;
  CheckpointWriter w(ss);
  a.save(w);
  KernelAgent b(ActionSpace::offloading(), params(3), Rng(0));
  CheckpointReader r(ss);
  b.load(r);
  Rng r1 = rng, r2 = rng;
  drive(a, r1, 200);
  drive(b, r2, 200);
  CHECK(a.weights(Objective::Energy) == b.weights(Objective::Energy));
  CHECK(a.weights(Objective::Backlog) == b.weights(Objective::Backlog));
  CHECK(a.avg_reward() == b.avg_reward());
}
