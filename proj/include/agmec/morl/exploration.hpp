#pragma once

#include <cstddef>

#include "agmec/errors.hpp"
#include "agmec/morl/action_space.hpp"
#include "agmec/random.hpp"

namespace agmec::morl {

struct Decision {
  std::size_t action = 0;
  bool explored = false;
};

// Improved epsilon-greedy: with probability epsilon pick uniformly among the
// actions never tried in this state row; fall back to `greedy()` otherwise or
// when the row is exhausted. Always consumes one uniform draw for eps_x.
template <typename Greedy>
Decision visit_epsilon_greedy(VisitTable& visits, std::size_t row, double epsilon, Rng& rng,
                              Greedy&& greedy) {
  if (row >= visits.rows()) throw ContractViolation("epsilon_greedy: state row not in visit table");
  const double eps_x = rng.uniform();
  Decision d;
  if (eps_x < epsilon) {
    const auto open = visits.unvisited(row);
    if (!open.empty()) {
      d.action = open[rng.index(open.size())];
      d.explored = true;
    }
  }
  if (!d.explored) d.action = greedy();
  visits.mark(row, d.action);
  return d;
}

}  // namespace agmec::morl
