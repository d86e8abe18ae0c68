#include "agmec/mec/tasks.hpp"

#include <algorithm>
#include <cmath>

#include "agmec/errors.hpp"

namespace agmec::mec {

std::string to_string(Waveform w) { return w == Waveform::Square ? "square" : "triangular"; }

Waveform parse_waveform(const std::string& s) {
  if (s == "square") return Waveform::Square;
  if (s == "triangular") return Waveform::Triangular;
  throw std::invalid_argument("unknown waveform '" + s + "'");
}

void TaskProfile::validate(const std::string& key_prefix) const {
  if (!(base_bits >= 0)) throw ConfigError(key_prefix + ".base_bits", "must be >= 0");
  if (!(peak_bits >= base_bits)) throw ConfigError(key_prefix + ".peak_bits", "must be >= base_bits");
  if (period < 1) throw ConfigError(key_prefix + ".period", "must be >= 1");
  if (!(duty > 0 && duty <= 1)) throw ConfigError(key_prefix + ".duty", "must be in (0, 1]");
  if (!(jitter >= 0 && jitter < 1)) throw ConfigError(key_prefix + ".jitter", "must be in [0, 1)");
}

namespace {

std::int64_t position(std::int64_t t, std::int64_t phase, std::int64_t period) {
  const auto p = (t + phase) % period;
  return p < 0 ? p + period : p;
}

std::int64_t high_slots(double duty, std::int64_t period) {
  return std::clamp<std::int64_t>(std::llround(duty * static_cast<double>(period)), 1, period);
}

}  // namespace

double TaskProfile::waveform_value(std::int64_t t) const {
  const auto p = position(t, phase, period);
  if (waveform == Waveform::Square) {
    const auto h = high_slots(duty, period);
    // window [-(h - h/2 - 1), h/2] around position 0, wrapped
    const auto after = h / 2;
    const auto before = h - after - 1;
    const bool high = p <= after || p >= period - before;
    return high ? peak_bits : base_bits;
  }
  const double half = static_cast<double>(period) / 2.0;
  const double dist = static_cast<double>(std::min(p, period - p));
  return peak_bits - (peak_bits - base_bits) * std::min(1.0, dist / half);
}

double TaskProfile::period_mean() const {
  if (waveform == Waveform::Square) {
    const double h = static_cast<double>(high_slots(duty, period));
    const double n = static_cast<double>(period);
    return (h * peak_bits + (n - h) * base_bits) / n;
  }
  // sum over p of min(p, n - p) = floor(n^2 / 4)
  const auto n = period;
  const double dist_sum = static_cast<double>((n * n) / 4);
  const double half = static_cast<double>(n) / 2.0;
  return peak_bits - (peak_bits - base_bits) * dist_sum / (half * static_cast<double>(n));
}

Bits generate_tasks(const TaskProfile& profile, std::int64_t t, Rng& rng) {
  if (t < 0) throw ContractViolation("generate_tasks: negative slot");
  const double u = rng.uniform();
  const double factor = 1.0 + profile.jitter * (2.0 * u - 1.0);
  return std::max<Bits>(0, std::llround(profile.waveform_value(t) * factor));
}

}  // namespace agmec::mec
