// agmec: run, sweep and benchmark the air-ground MEC learners.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "agmec/errors.hpp"
#include "agmec/sim/experiment.hpp"

namespace fs = std::filesystem;
using namespace agmec::sim;

namespace {

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string agent;
  std::optional<std::int64_t> timeslots;
  std::optional<std::size_t> n_step;
  std::optional<double> we, wd;
  std::string out_dir;
  std::vector<std::string> sets;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config, "config file (flat key = value)")->check(CLI::ExistingFile);
  cmd->add_option("--seed", c.seed, "run a single seed instead of the config's seed list");
  cmd->add_option("--agent", c.agent, "learner kind")->check(CLI::IsMember({"kernel", "dnn"}));
  cmd->add_option("--timeslots", c.timeslots, "number of slots T");
  cmd->add_option("--n-step", c.n_step, "n-step return length");
  cmd->add_option("--we", c.we, "energy weight w_e");
  cmd->add_option("--wd", c.wd, "backlog weight w_d");
  cmd->add_option("--out-dir", c.out_dir, "output directory");
  cmd->add_option("--set", c.sets, "extra key=value override (repeatable)");
}

SimConfig resolve(const Common& c) {
  std::vector<Override> ov;
  for (const auto& s : c.sets) {
    const auto parsed = parse_override_list(s);
    ov.insert(ov.end(), parsed.begin(), parsed.end());
  }
  if (!c.agent.empty()) ov.emplace_back("agent", c.agent);
  if (c.timeslots) ov.emplace_back("timeslots", std::to_string(*c.timeslots));
  if (c.n_step) ov.emplace_back("n_step", std::to_string(*c.n_step));
  if (c.we) ov.emplace_back("w_e", format_double(*c.we));
  if (c.wd) ov.emplace_back("w_d", format_double(*c.wd));
  if (!c.out_dir.empty()) ov.emplace_back("out_dir", c.out_dir);
  if (c.seed) ov.emplace_back("seeds", std::to_string(*c.seed));
  return c.config.empty() ? parse_config("", ov) : load_config(c.config, ov);
}

int cmd_run(const Common& c) {
  const auto cfg = resolve(c);
  const fs::path out = cfg.out_dir;
  for (auto seed : cfg.seeds) {
    RunOptions opts;
    opts.out_dir = c.seed ? out : out / ("seed" + std::to_string(seed));
    const auto s = run_experiment(cfg, seed, opts);
    std::printf("seed %llu: avgE %.6g J  avgD %.6g bits  longterm E %.6g J  D %.6g bits  -> %s\n",
                static_cast<unsigned long long>(seed), s.final_avg_energy_j, s.final_avg_backlog_bits,
                s.longterm_energy_j, s.longterm_backlog_bits, opts.out_dir->string().c_str());
  }
  return 0;
}

int cmd_sweep(const Common& c, const std::vector<std::string>& vary, unsigned jobs) {
  const auto cfg = resolve(c);
  std::vector<Variation> variations;
  for (const auto& v : vary) {
    const auto colon = v.find(':');
    if (colon == std::string::npos) throw agmec::ConfigError("--vary", "expected label:key=value[,key=value]");
    variations.push_back({v.substr(0, colon), parse_override_list(v.substr(colon + 1))});
  }
  const auto res = sweep(cfg, variations, fs::path(cfg.out_dir), jobs);
  write_sweep_table(std::cout, res);
  return 0;
}

int cmd_bench(const Common& c, std::size_t warmup, std::size_t slots) {
  const auto cfg = resolve(c);
  const auto seed = cfg.seeds.front();
  const auto r = timing_benchmark(cfg, seed, warmup, slots);
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "agent,mean_s,std_s,samples\nkernel,%.6g,%.6g,%zu\ndnn,%.6g,%.6g,%zu\nratio_dnn_over_kernel,%.6g,,\n",
                r.kernel.mean_s, r.kernel.std_s, r.kernel.samples, r.dnn.mean_s, r.dnn.std_s, r.dnn.samples,
                r.ratio());
  std::cout << buf;
  fs::create_directories(cfg.out_dir);
  std::ofstream(fs::path(cfg.out_dir) / "bench.csv") << buf;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-objective kernel RL for air-ground MEC: simulator and experiments"};
  app.require_subcommand(1);

  Common run_opts, sweep_opts, bench_opts;
  auto* run = app.add_subcommand("run", "run one experiment per seed");
  add_common(run, run_opts);

  auto* sw = app.add_subcommand("sweep", "compare variations over the seed list");
  add_common(sw, sweep_opts);
  std::vector<std::string> vary;
  unsigned jobs = 0;
  sw->add_option("--vary", vary, "label:key=value[,key=value] (at least two)")->required();
  sw->add_option("--jobs", jobs, "parallel runs (0 = all cores)");

  auto* bench = app.add_subcommand("bench", "time kernel vs dnn decision+learning per slot");
  add_common(bench, bench_opts);
  std::size_t warmup = 500, slots = 2000;
  bench->add_option("--warmup", warmup, "warmup slots");
  bench->add_option("--slots", slots, "measured slots");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(run_opts);
    if (*sw) return cmd_sweep(sweep_opts, vary, jobs);
    if (*bench) return cmd_bench(bench_opts, warmup, slots);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
