#include "agmec/morl/state_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "agmec/errors.hpp"

namespace agmec::morl {

double log_backlog_feature(mec::Bits backlog) {
  return -std::log(static_cast<double>(std::max<mec::Bits>(backlog, 1)));
}

QuantizedStateSet::QuantizedStateSet(double mu_q, double mu_d) : mu_q_(mu_q), mu_d_(mu_d) {
  if (!(mu_q > 0) || !(mu_d > 0)) throw ContractViolation("quantization thresholds must be > 0");
}

std::size_t QuantizedStateSet::CellHash::operator()(const CellKey& k) const noexcept {
  return std::hash<std::int64_t>{}(k.first * 73856093LL ^ k.second * 19349663LL);
}

QuantizedStateSet::CellKey QuantizedStateSet::cell_of(const Eigen::Vector3d& p) const {
  return {static_cast<std::int64_t>(std::floor(p.x() / mu_q_)),
          static_cast<std::int64_t>(std::floor(p.y() / mu_q_))};
}

void QuantizedStateSet::index_state(std::size_t i) { grid_[cell_of(states_[i].position)].push_back(i); }

Quantization QuantizedStateSet::lookup(const QuantizedState& s) const {
  if (!s.position.allFinite() || !std::isfinite(s.log_backlog))
    throw ContractViolation("quantize: state must be finite");
  // Any state within mu_q in 3-D is within mu_q in the plane, hence in a neighbouring cell.
  const auto [cx, cy] = cell_of(s.position);
  bool found = false;
  std::size_t best = 0;
  double best_pos = std::numeric_limits<double>::infinity();
  double best_d = best_pos;
  for (std::int64_t dx = -1; dx <= 1; ++dx) {
    for (std::int64_t dy = -1; dy <= 1; ++dy) {
      const auto it = grid_.find({cx + dx, cy + dy});
      if (it == grid_.end()) continue;
      for (const auto i : it->second) {
        const auto& c = states_[i];
        const double pos = (s.position - c.position).norm();
        const double dd = std::abs(s.log_backlog - c.log_backlog);
        if (pos > mu_q_ || dd > mu_d_) continue;
        const bool better = !found || pos < best_pos || (pos == best_pos && dd < best_d) ||
                            (pos == best_pos && dd == best_d && i < best);
        if (better) {
          found = true;
          best = i;
          best_pos = pos;
          best_d = dd;
        }
      }
    }
  }
  return found ? Quantization{best, false} : Quantization{states_.size(), true};
}

Quantization QuantizedStateSet::quantize(const QuantizedState& s) {
  const auto q = lookup(s);
  if (q.is_new) {
    states_.push_back(s);
    index_state(states_.size() - 1);
  }
  return q;
}

void QuantizedStateSet::save(CheckpointWriter& w) const {
  w.tag("states");
  w.put(mu_q_);
  w.put(mu_d_);
  w.put(static_cast<std::int64_t>(states_.size()));
  for (const auto& s : states_) {
    w.put(s.position.x());
    w.put(s.position.y());
    w.put(s.position.z());
    w.put(s.log_backlog);
  }
  w.newline();
}

void QuantizedStateSet::load(CheckpointReader& r) {
  r.expect("states");
  mu_q_ = r.get_double();
  mu_d_ = r.get_double();
  const auto n = r.get_i64();
  states_.clear();
  grid_.clear();
  for (std::int64_t i = 0; i < n; ++i) {
    QuantizedState s;
    s.position.x() = r.get_double();
    s.position.y() = r.get_double();
    s.position.z() = r.get_double();
    s.log_backlog = r.get_double();
    states_.push_back(s);
    index_state(states_.size() - 1);
  }
}

}  // namespace agmec::morl
