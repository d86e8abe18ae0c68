#include "agmec/dnn/replay.hpp"

#include "agmec/errors.hpp"

namespace agmec::dnn {

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw ContractViolation("replay capacity must be >= 1");
  items_.reserve(capacity);
}

void ReplayBuffer::push(const Transition& t) {
  if (items_.size() < capacity_) {
    items_.push_back(t);
  } else {
    items_[head_] = t;
  }
  head_ = (head_ + 1) % capacity_;
}

std::vector<std::size_t> ReplayBuffer::sample_indices(std::size_t n, Rng& rng) const {
  if (items_.empty()) throw ContractViolation("cannot sample an empty replay buffer");
  std::vector<std::size_t> idx(n);
  for (auto& i : idx) i = rng.index(items_.size());
  return idx;
}

namespace {

void put_state(CheckpointWriter& w, const morl::QuantizedState& s) {
  w.put(s.position.x());
  w.put(s.position.y());
  w.put(s.position.z());
  w.put(s.log_backlog);
}

morl::QuantizedState get_state(CheckpointReader& r) {
  morl::QuantizedState s;
  s.position.x() = r.get_double();
  s.position.y() = r.get_double();
  s.position.z() = r.get_double();
  s.log_backlog = r.get_double();
  return s;
}

}  // namespace

void ReplayBuffer::save(CheckpointWriter& w) const {
  w.tag("replay");
  w.put(static_cast<std::int64_t>(capacity_));
  w.put(static_cast<std::int64_t>(head_));
  w.put(static_cast<std::int64_t>(items_.size()));
  for (const auto& t : items_) {
    put_state(w, t.state);
    w.put(static_cast<std::int64_t>(t.action));
    w.put(t.reward.e);
    w.put(t.reward.d);
    put_state(w, t.next_state);
  }
  w.newline();
}

void ReplayBuffer::load(CheckpointReader& r) {
  r.expect("replay");
  capacity_ = static_cast<std::size_t>(r.get_i64());
  head_ = static_cast<std::size_t>(r.get_i64());
  const auto n = r.get_i64();
  items_.clear();
  items_.reserve(capacity_);
  for (std::int64_t i = 0; i < n; ++i) {
    Transition t;
    t.state = get_state(r);
    t.action = static_cast<std::size_t>(r.get_i64());
    t.reward.e = r.get_double();
    t.reward.d = r.get_double();
    t.next_state = get_state(r);
    items_.push_back(t);
  }
}

}  // namespace agmec::dnn
