#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "agmec/checkpoint_io.hpp"

namespace agmec::morl {

using ActionVector = std::array<double, 3>;

// Finite action set of one agent with its kernel-space encoding: flight
// directions as planar unit vectors, offloading choices as one-hot vectors.
class ActionSpace {
 public:
  enum class Kind : std::uint8_t { Trajectory, Offloading };

  static ActionSpace trajectory();
  static ActionSpace offloading();
  // Arbitrary encodings, mainly for tests.
  static ActionSpace custom(std::vector<ActionVector> encodings);

  Kind kind() const { return kind_; }
  std::size_t size() const { return encodings_.size(); }
  const ActionVector& encode(std::size_t a) const { return encodings_.at(a); }

 private:
  ActionSpace(Kind kind, std::vector<ActionVector> enc) : kind_(kind), encodings_(std::move(enc)) {}
  Kind kind_;
  std::vector<ActionVector> encodings_;
};

// Binary state x action visit matrix; grows by zero rows as states appear.
class VisitTable {
 public:
  explicit VisitTable(std::size_t num_actions) : cols_(num_actions) {}

  void ensure_rows(std::size_t rows);
  std::size_t rows() const { return cols_ == 0 ? 0 : cells_.size() / cols_; }
  std::size_t cols() const { return cols_; }

  bool visited(std::size_t row, std::size_t action) const;
  void mark(std::size_t row, std::size_t action);
  std::vector<std::size_t> unvisited(std::size_t row) const;

  void save(CheckpointWriter& w) const;
  void load(CheckpointReader& r);

 private:
  std::size_t cols_;
  std::vector<std::uint8_t> cells_;
};

}  // namespace agmec::morl
