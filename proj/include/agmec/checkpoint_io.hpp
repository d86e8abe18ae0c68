#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "agmec/random.hpp"

namespace agmec {

// Whitespace-separated text checkpoint stream. Doubles are written as hex
// floats so a save/load cycle is bit-exact; strings are length-prefixed.
class CheckpointWriter {
 public:
  explicit CheckpointWriter(std::ostream& os) : os_(os) {}

  void tag(std::string_view name);
  void put(double v);
  void put(std::int64_t v);
  void put(std::uint64_t v);
  void put(bool v);
  void put(const std::string& s);
  void put(const Eigen::VectorXd& v);
  void put(const Eigen::MatrixXd& m);
  void put(const Rng& rng);
  void newline() { os_ << '\n'; }

 private:
  std::ostream& os_;
};

class CheckpointReader {
 public:
  explicit CheckpointReader(std::istream& is) : is_(is) {}

  // Throws ContractViolation when the next token differs from `name`.
  void expect(std::string_view name);
  double get_double();
  std::int64_t get_i64();
  std::uint64_t get_u64();
  bool get_bool();
  std::string get_string();
  Eigen::VectorXd get_vector();
  Eigen::MatrixXd get_matrix();
  void get_rng(Rng& rng);

 private:
  std::string token();
  std::istream& is_;
};

}  // namespace agmec
