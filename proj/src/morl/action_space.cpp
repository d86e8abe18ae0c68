#include "agmec/morl/action_space.hpp"

#include "agmec/errors.hpp"
#include "agmec/mec/env.hpp"

namespace agmec::morl {

ActionSpace ActionSpace::trajectory() {
  std::vector<ActionVector> enc;
  for (std::size_t d = 0; d < mec::kNumDirections; ++d) {
    const auto u = mec::unit_vector(static_cast<mec::Direction>(d));
    enc.push_back({u.x(), u.y(), 0.0});
  }
  return {Kind::Trajectory, std::move(enc)};
}

ActionSpace ActionSpace::offloading() {
  return {Kind::Offloading, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
}

ActionSpace ActionSpace::custom(std::vector<ActionVector> encodings) {
  if (encodings.empty()) throw ContractViolation("action space must be nonempty");
  return {Kind::Offloading, std::move(encodings)};
}

void VisitTable::ensure_rows(std::size_t rows) {
  if (rows * cols_ > cells_.size()) cells_.resize(rows * cols_, 0);
}

bool VisitTable::visited(std::size_t row, std::size_t action) const {
  if (row >= rows() || action >= cols_) throw ContractViolation("visit table index out of range");
  return cells_[row * cols_ + action] != 0;
}

void VisitTable::mark(std::size_t row, std::size_t action) {
  if (row >= rows() || action >= cols_) throw ContractViolation("visit table index out of range");
  cells_[row * cols_ + action] = 1;
}

std::vector<std::size_t> VisitTable::unvisited(std::size_t row) const {
  if (row >= rows()) throw ContractViolation("visit table row out of range");
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < cols_; ++a)
    if (cells_[row * cols_ + a] == 0) out.push_back(a);
  return out;
}

void VisitTable::save(CheckpointWriter& w) const {
  w.tag("visits");
  w.put(static_cast<std::int64_t>(cols_));
  w.put(static_cast<std::int64_t>(rows()));
  std::string bits(cells_.size(), '0');
  for (std::size_t i = 0; i < cells_.size(); ++i) bits[i] = cells_[i] ? '1' : '0';
  w.put(bits);
  w.newline();
}

void VisitTable::load(CheckpointReader& r) {
  r.expect("visits");
  cols_ = static_cast<std::size_t>(r.get_i64());
  const auto rows = static_cast<std::size_t>(r.get_i64());
  const auto bits = r.get_string();
  if (bits.size() != rows * cols_) throw ContractViolation("checkpoint: visit table size mismatch");
  cells_.assign(bits.size(), 0);
  for (std::size_t i = 0; i < bits.size(); ++i) cells_[i] = bits[i] == '1';
}

}  // namespace agmec::morl
