#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>

namespace agmec {

// Seeded random source with distribution code owned here, so that sequences
// are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Unit-mean exponential; this is |Gamma|^2 for Rayleigh fading.
  double exponential();

  // Uniform integer in [0, n). n must be > 0.
  std::size_t index(std::size_t n);

  bool bernoulli(double p) { return uniform() < p; }

  std::string state() const;
  void restore(const std::string& state);

  friend bool operator==(const Rng& a, const Rng& b) { return a.engine_ == b.engine_; }

 private:
  std::mt19937_64 engine_;
};

// Independent named streams derived from one master seed. Environment streams
// never share state with agent streams, so swapping the learner cannot perturb
// the channel or task sequence.
enum class Stream : std::uint64_t {
  EnvFading = 1,
  EnvLos = 2,
  EnvTasks = 3,
  AgentExploration = 4,
  DnnInit = 5,
  ReplaySampling = 6,
};

Rng make_stream(std::uint64_t master_seed, Stream stream, std::uint64_t sub = 0);

}  // namespace agmec
