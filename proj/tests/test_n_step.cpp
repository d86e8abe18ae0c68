#include <doctest.h>

#include <cmath>
#include <sstream>

#include "agmec/errors.hpp"
#include "agmec/morl/n_step.hpp"
#include "agmec/random.hpp"

using namespace agmec;
using namespace agmec::morl;

namespace {

// Slot t (from 1) ends with reward r_{t+1}; rho = t - n + 1 and
// r_{t:t+n} = sum_{i=rho+1}^{rho+n} gamma^(i-rho-1) r_i.
RewardVector reference_return(const std::vector<RewardVector>& r, long t, long n, double gamma) {
  const long rho = t - n + 1;
  RewardVector s;
  for (long i = rho + 1; i <= rho + n; ++i) s += std::pow(gamma, static_cast<double>(i - rho - 1)) * r.at(i);
  return s;
}

}  // namespace

TEST_CASE("one-step return is the newest reward") {
  RewardWindow w(1);
  CHECK_FALSE(w.n_step_return(0.3, WindowOrder::OldestFirst).has_value());
  w.push({-1.5, -2.5});
  CHECK(*w.n_step_return(0.3, WindowOrder::OldestFirst) == RewardVector{-1.5, -2.5});
  w.push({-7, -8});
  CHECK(*w.n_step_return(0.3, WindowOrder::OldestFirst) == RewardVector{-7, -8});
}

TEST_CASE("no return while rho < 0") {
  RewardWindow w(5);
  for (int i = 0; i < 4; ++i) {
    w.push({1, 1});
    CHECK_FALSE(w.ready());
    CHECK_FALSE(w.n_step_return(0.3, WindowOrder::OldestFirst).has_value());
  }
  w.push({1, 1});
  CHECK(w.ready());
}

TEST_CASE("trailing window matches the summation with weight one on the oldest reward") {
  Rng rng(9);
  for (long n : {1L, 2L, 5L, 30L}) {
    RewardWindow w(static_cast<std::size_t>(n));
    std::vector<RewardVector> r(2);  // r[0], r[1] unused: the first reward is r_2
    for (long t = 1; t <= 200; ++t) {
      r.push_back({-rng.uniform() * 10, -rng.uniform() * 1e3});
      w.push(r.back());
      const auto got = w.n_step_return(0.3, WindowOrder::OldestFirst);
      // the window r_{rho+1}..r_{t+1} is complete once rho >= 1
      REQUIRE(got.has_value() == (t - n + 1 >= 1));
      if (!got) continue;
      const auto ref = reference_return(r, t, n, 0.3);
      CHECK(got->e == doctest::Approx(ref.e).epsilon(1e-13));
      CHECK(got->d == doctest::Approx(ref.d).epsilon(1e-13));
    }
  }
}

TEST_CASE("newest-first ordering is the mirror image") {
  const std::vector<RewardVector> win{{1, 10}, {2, 20}, {3, 30}};
  const auto o = discounted_window_return(win, 0.5, WindowOrder::OldestFirst);
  const auto n = discounted_window_return(win, 0.5, WindowOrder::NewestFirst);
  CHECK(o.e == doctest::Approx(1 + 0.5 * 2 + 0.25 * 3));
  CHECK(n.e == doctest::Approx(3 + 0.5 * 2 + 0.25 * 1));
  CHECK(n.d == doctest::Approx(10 * n.e));
}

TEST_CASE("window checkpoint round trip") {
  RewardWindow w(4);
  for (int i = 0; i < 6; ++i) w.push({-0.1 * i, -1e5 * i});
  std::stringstream ss;
  CheckpointWriter cw(ss);
  w.save(cw);
  RewardWindow back(4);
  CheckpointReader cr(ss);
  back.load(cr);
  CHECK(back.contents() == w.contents());
  CHECK_THROWS_AS(RewardWindow(0), ContractViolation);
}
