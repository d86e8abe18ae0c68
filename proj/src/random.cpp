#include "agmec/random.hpp"

#include <cmath>
#include <sstream>

#include "agmec/errors.hpp"

namespace agmec {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

double Rng::exponential() { return -std::log1p(-uniform()); }

std::size_t Rng::index(std::size_t n) {
  if (n == 0) throw ContractViolation("Rng::index requires n > 0");
  const auto i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
  return i < n ? i : n - 1;
}

std::string Rng::state() const {
  std::ostringstream os;
  os << engine_;
  return os.str();
}

void Rng::restore(const std::string& state) {
  std::istringstream is(state);
  is >> engine_;
  if (!is) throw ContractViolation("malformed RNG state");
}

Rng make_stream(std::uint64_t master_seed, Stream stream, std::uint64_t sub) {
  std::uint64_t s = splitmix64(master_seed);
  s = splitmix64(s ^ (static_cast<std::uint64_t>(stream) * 0xD1B54A32D192ED03ULL));
  s = splitmix64(s ^ (sub + 1) * 0xA24BAED4963EE407ULL);
  return Rng(s);
}

}  // namespace agmec
