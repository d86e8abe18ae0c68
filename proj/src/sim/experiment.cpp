#include "agmec/sim/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <thread>

#include "agmec/sim/simulation.hpp"

namespace agmec::sim {

namespace {

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream f(p);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  return f;
}

double mean_of(const std::vector<double>& v, std::size_t from) {
  if (from >= v.size()) return 0;
  double s = 0;
  for (std::size_t i = from; i < v.size(); ++i) s += v[i];
  return s / static_cast<double>(v.size() - from);
}

}  // namespace

RunSummary run_experiment(const SimConfig& cfg, std::uint64_t seed, const RunOptions& opts) {
  cfg.validate();
  Simulation sim(cfg, seed);

  std::ofstream metrics_f, traj_f, audit_f;
  std::optional<MetricsWriter> metrics;
  if (opts.out_dir) {
    std::filesystem::create_directories(*opts.out_dir);
    open_out(*opts.out_dir / "config.resolved") << cfg.to_text();
    metrics_f = open_out(*opts.out_dir / "metrics.csv");
    traj_f = open_out(*opts.out_dir / "trajectory.csv");
    audit_f = open_out(*opts.out_dir / "audit.csv");
    metrics.emplace(metrics_f, cfg.network.num_ues());
    traj_f << "t,x,y\n";
    audit_f << "t,produced_total_bits,processed_total_bits,backlog_bits,pending_fresh_bits,balance_bits\n";
  }

  const auto T = static_cast<std::size_t>(cfg.timeslots);
  std::vector<double> energy, backlog, xs, ys;
  energy.reserve(T);
  backlog.reserve(T);
  xs.reserve(T);
  ys.reserve(T);
  double decide_sum = 0, learn_sum = 0;
  RunSummary sum;
  sum.seed = seed;
  sum.config_hash = cfg.hash();

  for (std::size_t k = 0; k < T; ++k) {
    SlotRecord rec;
    try {
      rec = sim.step();
    } catch (const std::exception& e) {
      throw SlotError(static_cast<std::int64_t>(k), e.what());
    }
    decide_sum += rec.t_decide_s;
    learn_sum += rec.t_learn_s;
    energy.push_back(rec.energy_j);
    backlog.push_back(static_cast<double>(rec.backlog_bits));
    xs.push_back(rec.uav_x);
    ys.push_back(rec.uav_y);

    const auto& env = sim.env();
    // Every bit ever produced is either processed, carried, or waiting as fresh.
    const auto balance = env.produced_total - env.processed_total - env.backlog() - env.pending_fresh();
    if (balance != 0) sum.conservation_ok = false;

    if (!cfg.timing_in_metrics) rec.t_decide_s = rec.t_learn_s = 0;
    if (metrics) {
      metrics->write(rec);
      traj_f << rec.t << ',' << format_double(rec.uav_x) << ',' << format_double(rec.uav_y) << '\n';
      audit_f << rec.t << ',' << env.produced_total << ',' << env.processed_total << ',' << env.backlog() << ','
              << env.pending_fresh() << ',' << balance << '\n';
    }
    if (opts.on_record) opts.on_record(rec);
  }

  sum.slots = static_cast<std::int64_t>(T);
  sum.final_avg_energy_j = sim.avg_energy();
  sum.final_avg_backlog_bits = sim.avg_backlog();
  const std::size_t lt_from = T - std::max<std::size_t>(1, T / 5);
  sum.longterm_energy_j = mean_of(energy, lt_from);
  sum.longterm_backlog_bits = mean_of(backlog, lt_from);
  const std::size_t tail_from = T - std::min<std::size_t>(2000, T);
  sum.tail_uav_x = mean_of(xs, tail_from);
  sum.tail_uav_y = mean_of(ys, tail_from);
  sum.mean_decide_s = decide_sum / static_cast<double>(T);
  sum.mean_learn_s = learn_sum / static_cast<double>(T);

  if (opts.out_dir) {
    auto f = open_out(*opts.out_dir / "summary.txt");
    write_summary(f, sum);
  }
  return sum;
}

void write_summary(std::ostream& out, const RunSummary& s) {
  char hash[24];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(s.config_hash));
  out << "config_hash = " << hash << '\n'
      << "seed = " << s.seed << '\n'
      << "slots = " << s.slots << '\n'
      << "final_avg_energy_j = " << format_double(s.final_avg_energy_j) << '\n'
      << "final_avg_backlog_bits = " << format_double(s.final_avg_backlog_bits) << '\n'
      << "longterm_energy_j = " << format_double(s.longterm_energy_j) << '\n'
      << "longterm_backlog_bits = " << format_double(s.longterm_backlog_bits) << '\n'
      << "tail_uav_x_m = " << format_double(s.tail_uav_x) << '\n'
      << "tail_uav_y_m = " << format_double(s.tail_uav_y) << '\n'
      << "mean_decide_s = " << format_double(s.mean_decide_s) << '\n'
      << "mean_learn_s = " << format_double(s.mean_learn_s) << '\n'
      << "conservation_ok = " << (s.conservation_ok ? "true" : "false") << '\n';
}

double SweepResult::mean_longterm_energy(const std::string& label) const {
  double s = 0;
  int n = 0;
  for (const auto& r : rows)
    if (r.label == label) s += r.summary.longterm_energy_j, ++n;
  return n ? s / n : 0;
}

double SweepResult::mean_longterm_backlog(const std::string& label) const {
  double s = 0;
  int n = 0;
  for (const auto& r : rows)
    if (r.label == label) s += r.summary.longterm_backlog_bits, ++n;
  return n ? s / n : 0;
}

SweepResult sweep(const SimConfig& cfg, const std::vector<Variation>& variations,
                  const std::optional<std::filesystem::path>& out_dir, unsigned jobs) {
  if (variations.size() < 2) throw std::invalid_argument("sweep needs at least two variations");

  struct Job {
    std::string label;
    SimConfig cfg;
    std::uint64_t seed;
  };
  std::vector<Job> work;
  const auto base_text = cfg.to_text();
  for (const auto& v : variations) {
    auto vc = parse_config(base_text, v.overrides);
    for (auto seed : cfg.seeds) work.push_back({v.label, vc, seed});
  }

  SweepResult result;
  result.rows.resize(work.size());
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr err;
  auto worker = [&] {
    for (std::size_t i = next++; i < work.size(); i = next++) {
      try {
        RunOptions opts;
        if (out_dir) opts.out_dir = *out_dir / work[i].label / ("seed" + std::to_string(work[i].seed));
        result.rows[i] = {work[i].label, run_experiment(work[i].cfg, work[i].seed, opts)};
      } catch (...) {
        std::lock_guard lock(err_mu);
        if (!err) err = std::current_exception();
      }
    }
  };
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(work.size()));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  if (err) std::rethrow_exception(err);

  if (out_dir) {
    auto f = open_out(*out_dir / "sweep.csv");
    write_sweep_table(f, result);
  }
  return result;
}

void write_sweep_table(std::ostream& out, const SweepResult& result) {
  out << "variation,seed,longterm_energy_j,longterm_backlog_bits,final_avg_energy_j,final_avg_backlog_bits\n";
  std::vector<std::string> labels;
  for (const auto& r : result.rows) {
    if (std::find(labels.begin(), labels.end(), r.label) == labels.end()) labels.push_back(r.label);
    out << r.label << ',' << r.summary.seed << ',' << format_double(r.summary.longterm_energy_j) << ','
        << format_double(r.summary.longterm_backlog_bits) << ',' << format_double(r.summary.final_avg_energy_j)
        << ',' << format_double(r.summary.final_avg_backlog_bits) << '\n';
  }
  for (const auto& l : labels)
    out << l << ",mean," << format_double(result.mean_longterm_energy(l)) << ','
        << format_double(result.mean_longterm_backlog(l)) << ",,\n";
}

BenchResult timing_benchmark(const SimConfig& cfg, std::uint64_t seed, std::size_t warmup, std::size_t measured) {
  auto measure = [&](AgentKind kind) {
    SimConfig c = cfg;
    c.agent = kind;
    Simulation sim(c, seed);
    for (std::size_t i = 0; i < warmup; ++i) sim.step();
    std::vector<double> t;
    t.reserve(measured);
    for (std::size_t i = 0; i < measured; ++i) {
      const auto rec = sim.step();
      t.push_back(rec.t_decide_s + rec.t_learn_s);
    }
    TimingStats s;
    s.samples = t.size();
    s.mean_s = mean_of(t, 0);
    double var = 0;
    for (double x : t) var += (x - s.mean_s) * (x - s.mean_s);
    s.std_s = t.size() > 1 ? std::sqrt(var / static_cast<double>(t.size() - 1)) : 0;
    return s;
  };
  BenchResult r;
  r.kernel = measure(AgentKind::Kernel);
  r.dnn = measure(AgentKind::Dnn);
  return r;
}

}  // namespace agmec::sim
