#include "agmec/checkpoint_io.hpp"

#include <cstdio>
#include <cstdlib>

#include "agmec/errors.hpp"

namespace agmec {

void CheckpointWriter::tag(std::string_view name) { os_ << name << ' '; }

void CheckpointWriter::put(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  os_ << buf << ' ';
}

void CheckpointWriter::put(std::int64_t v) { os_ << v << ' '; }
void CheckpointWriter::put(std::uint64_t v) { os_ << v << ' '; }
void CheckpointWriter::put(bool v) { os_ << (v ? 1 : 0) << ' '; }

void CheckpointWriter::put(const std::string& s) { os_ << s.size() << ' ' << s << ' '; }

void CheckpointWriter::put(const Eigen::VectorXd& v) {
  put(static_cast<std::int64_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) put(v[i]);
}

void CheckpointWriter::put(const Eigen::MatrixXd& m) {
  put(static_cast<std::int64_t>(m.rows()));
  put(static_cast<std::int64_t>(m.cols()));
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) put(m(i, j));
}

void CheckpointWriter::put(const Rng& rng) { put(rng.state()); }

std::string CheckpointReader::token() {
  std::string t;
  if (!(is_ >> t)) throw ContractViolation("checkpoint truncated");
  return t;
}

void CheckpointReader::expect(std::string_view name) {
  const auto t = token();
  if (t != name)
    throw ContractViolation("checkpoint: expected '" + std::string(name) + "', found '" + t + "'");
}

double CheckpointReader::get_double() {
  const auto t = token();
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end == t.c_str() || *end != '\0') throw ContractViolation("checkpoint: bad double '" + t + "'");
  return v;
}

std::int64_t CheckpointReader::get_i64() {
  const auto t = token();
  char* end = nullptr;
  const long long v = std::strtoll(t.c_str(), &end, 10);
  if (end == t.c_str() || *end != '\0') throw ContractViolation("checkpoint: bad integer '" + t + "'");
  return v;
}

std::uint64_t CheckpointReader::get_u64() {
  const auto t = token();
  char* end = nullptr;
  const unsigned long long v = std::strtoull(t.c_str(), &end, 10);
  if (end == t.c_str() || *end != '\0') throw ContractViolation("checkpoint: bad integer '" + t + "'");
  return v;
}

bool CheckpointReader::get_bool() { return get_i64() != 0; }

std::string CheckpointReader::get_string() {
  const auto n = static_cast<std::size_t>(get_i64());
  is_.get();  // single separator
  std::string s(n, '\0');
  if (n > 0 && !is_.read(s.data(), static_cast<std::streamsize>(n)))
    throw ContractViolation("checkpoint truncated inside string");
  return s;
}

Eigen::VectorXd CheckpointReader::get_vector() {
  const auto n = get_i64();
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = get_double();
  return v;
}

Eigen::MatrixXd CheckpointReader::get_matrix() {
  const auto r = get_i64();
  const auto c = get_i64();
  Eigen::MatrixXd m(r, c);
  for (Eigen::Index j = 0; j < c; ++j)
    for (Eigen::Index i = 0; i < r; ++i) m(i, j) = get_double();
  return m;
}

void CheckpointReader::get_rng(Rng& rng) { rng.restore(get_string()); }

}  // namespace agmec
