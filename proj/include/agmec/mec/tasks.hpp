#pragma once

#include <cstdint>
#include <string>

#include "agmec/mec/channel.hpp"
#include "agmec/random.hpp"

namespace agmec::mec {

enum class Waveform { Square, Triangular };

std::string to_string(Waveform w);
Waveform parse_waveform(const std::string& s);

// Periodic per-UE task production. Both waveforms peak at phase position 0,
// i.e. at slots t with (t + phase) % period == 0.
//   square:     peak inside a window of round(duty * period) slots centred on
//               the peak position, base elsewhere
//   triangular: linear from peak (position 0) down to base (position period/2)
struct TaskProfile {
  double base_bits = 0;
  double peak_bits = 0;
  std::int64_t period = 1;
  std::int64_t phase = 0;
  Waveform waveform = Waveform::Square;
  double duty = 0.25;
  double jitter = 0;  // multiplicative noise, uniform in [1 - jitter, 1 + jitter]

  void validate(const std::string& key_prefix) const;

  // Noise-free waveform value at slot t.
  double waveform_value(std::int64_t t) const;
  // Exact mean of waveform_value over one period.
  double period_mean() const;
};

// One uniform draw is consumed per call regardless of jitter, so the tasks
// stream advances identically for every profile.
Bits generate_tasks(const TaskProfile& profile, std::int64_t t, Rng& rng);

}  // namespace agmec::mec
