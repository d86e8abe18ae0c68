#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "agmec/sim/metrics.hpp"
#include "agmec/sim/sim_config.hpp"

namespace agmec::sim {

// An error raised inside the slot loop, with the failing slot attached.
class SlotError : public std::runtime_error {
 public:
  SlotError(std::int64_t slot, const std::string& what)
      : std::runtime_error("slot " + std::to_string(slot) + ": " + what), slot_(slot) {}
  std::int64_t slot() const { return slot_; }

 private:
  std::int64_t slot_;
};

struct RunSummary {
  std::uint64_t seed = 0;
  std::uint64_t config_hash = 0;
  std::int64_t slots = 0;
  double final_avg_energy_j = 0;
  double final_avg_backlog_bits = 0;
  // Means over the final 20% of slots.
  double longterm_energy_j = 0;
  double longterm_backlog_bits = 0;
  // Mean UAV position over the final min(2000, T) slots.
  double tail_uav_x = 0;
  double tail_uav_y = 0;
  double mean_decide_s = 0;
  double mean_learn_s = 0;
  bool conservation_ok = true;
};

struct RunOptions {
  // When set, metrics.csv, trajectory.csv, audit.csv, summary.txt and the
  // resolved config are written here.
  std::optional<std::filesystem::path> out_dir;
  // Called with every record, e.g. to keep them in memory.
  std::function<void(const SlotRecord&)> on_record;
};

RunSummary run_experiment(const SimConfig& cfg, std::uint64_t seed, const RunOptions& opts = {});

void write_summary(std::ostream& out, const RunSummary& s);

struct Variation {
  std::string label;
  std::vector<Override> overrides;
};

struct SweepRow {
  std::string label;
  RunSummary summary;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // variation-major, seeds in config order

  // Mean over seeds of a long-term metric for one variation.
  double mean_longterm_energy(const std::string& label) const;
  double mean_longterm_backlog(const std::string& label) const;
};

// Runs every variation over cfg.seeds. Independent runs go to a pool of
// `jobs` threads (0 = hardware concurrency). With an output directory, each
// run lands in <out>/<label>/seed<k>/ and the table in <out>/sweep.csv.
SweepResult sweep(const SimConfig& cfg, const std::vector<Variation>& variations,
                  const std::optional<std::filesystem::path>& out_dir = std::nullopt, unsigned jobs = 0);

void write_sweep_table(std::ostream& out, const SweepResult& result);

struct TimingStats {
  double mean_s = 0;
  double std_s = 0;
  std::size_t samples = 0;
};

struct BenchResult {
  TimingStats kernel;
  TimingStats dnn;
  double ratio() const { return dnn.mean_s / kernel.mean_s; }
};

// Per-slot decision + learning time of both agent kinds on the same seed.
BenchResult timing_benchmark(const SimConfig& cfg, std::uint64_t seed, std::size_t warmup = 500,
                             std::size_t measured = 2000);

}  // namespace agmec::sim
