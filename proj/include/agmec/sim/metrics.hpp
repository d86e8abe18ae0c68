#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace agmec::sim {

// One metrics.csv row. `t` counts slots from 1.
struct SlotRecord {
  std::int64_t t = 0;
  double energy_j = 0;
  std::int64_t backlog_bits = 0;
  double avg_energy_j = 0;
  double avg_backlog_bits = 0;
  double uav_x = 0, uav_y = 0;
  std::vector<int> actions;  // a0 = UAV direction, a1..aM = UE offloading
  std::vector<int> explored;
  double t_decide_s = 0;
  double t_learn_s = 0;
  // Kernel runs: dictionary sizes per agent. DNN runs: last training losses.
  std::vector<double> diag_e;
  std::vector<double> diag_d;
};

// Incremental mean that stays exact for a constant series.
class RunningAverage {
 public:
  void add(double x) {
    ++n_;
    mean_ += (x - mean_) / static_cast<double>(n_);
  }
  double mean() const { return mean_; }
  std::int64_t count() const { return n_; }

  static RunningAverage restore(double mean, std::int64_t n) {
    RunningAverage a;
    a.mean_ = mean;
    a.n_ = n;
    return a;
  }

 private:
  std::int64_t n_ = 0;
  double mean_ = 0;
};

class MetricsWriter {
 public:
  MetricsWriter(std::ostream& out, std::size_t num_ues);
  void write(const SlotRecord& r);

  static std::string header(std::size_t num_ues);

 private:
  std::ostream& out_;
  std::size_t num_ues_;
};

// Reads a metrics.csv back; throws std::runtime_error on malformed input.
std::vector<SlotRecord> read_metrics(std::istream& in, std::size_t num_ues);

std::string format_double(double v);

}  // namespace agmec::sim
