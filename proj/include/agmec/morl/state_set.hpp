#pragma once

#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "agmec/checkpoint_io.hpp"
#include "agmec/mec/channel.hpp"

namespace agmec::morl {

// Observed UAV position plus log-backlog feature d' = -log(max(D, 1)).
struct QuantizedState {
  Eigen::Vector3d position{0, 0, 0};
  double log_backlog = 0;
};

double log_backlog_feature(mec::Bits backlog);

struct Quantization {
  std::size_t index = 0;
  bool is_new = false;
};

// Online set of representative states shared by every agent. A query is new
// when, against every stored state, either the position moved more than mu_q
// or d' moved more than mu_d. Otherwise it maps to the nearest matching state
// (position distance first, then |delta d'|, then lowest index).
class QuantizedStateSet {
 public:
  QuantizedStateSet(double mu_q, double mu_d);

  Quantization quantize(const QuantizedState& s);
  // Same lookup without inserting; index is meaningless when is_new is true.
  Quantization lookup(const QuantizedState& s) const;

  std::size_t size() const { return states_.size(); }
  const QuantizedState& at(std::size_t i) const { return states_.at(i); }
  double mu_q() const { return mu_q_; }
  double mu_d() const { return mu_d_; }

  void save(CheckpointWriter& w) const;
  void load(CheckpointReader& r);

 private:
  using CellKey = std::pair<std::int64_t, std::int64_t>;
  struct CellHash {
    std::size_t operator()(const CellKey& k) const noexcept;
  };
  CellKey cell_of(const Eigen::Vector3d& p) const;
  void index_state(std::size_t i);

  double mu_q_;
  double mu_d_;
  std::vector<QuantizedState> states_;
  std::unordered_map<CellKey, std::vector<std::size_t>, CellHash> grid_;
};

}  // namespace agmec::morl
