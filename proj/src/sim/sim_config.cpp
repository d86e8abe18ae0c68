#include "agmec/sim/sim_config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "agmec/errors.hpp"

namespace agmec::sim {

std::string to_string(AgentKind k) { return k == AgentKind::Kernel ? "kernel" : "dnn"; }

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size() || !std::isfinite(d)) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError(key, "expected a finite number, got '" + v + "'");
  }
}

std::int64_t to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long long i = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return i;
  } catch (const std::exception&) {
    throw ConfigError(key, "expected an integer, got '" + v + "'");
  }
}

std::size_t to_count(const std::string& key, const std::string& v) {
  const auto i = to_int(key, v);
  if (i < 0) throw ConfigError(key, "must be >= 0");
  return static_cast<std::size_t>(i);
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(key, "expected true/false, got '" + v + "'");
}

struct Entry {
  std::function<void(SimConfig&, const std::string&, const std::string&)> set;
  std::function<std::string(const SimConfig&)> get;
};

template <typename F>
Entry num(F field) {
  return {[field](SimConfig& c, const std::string& k, const std::string& v) { field(c) = to_double(k, v); },
          [field](const SimConfig& c) { return fmt(field(const_cast<SimConfig&>(c))); }};
}

template <typename F>
Entry count(F field) {
  return {[field](SimConfig& c, const std::string& k, const std::string& v) {
            field(c) = static_cast<std::remove_reference_t<decltype(field(c))>>(to_count(k, v));
          },
          [field](const SimConfig& c) { return std::to_string(field(const_cast<SimConfig&>(c))); }};
}

template <typename F>
Entry dbm(F field) {
  return {[field](SimConfig& c, const std::string& k, const std::string& v) {
            field(c) = mec::dbm_to_watts(to_double(k, v));
          },
          [field](const SimConfig& c) {
            return fmt(10.0 * std::log10(field(const_cast<SimConfig&>(c))) + 30.0);
          }};
}

// Arena keys keep x_min/y_min at 0 and move the upper bounds.
const std::map<std::string, Entry>& global_keys() {
  static const std::map<std::string, Entry> keys = {
      // geometry
      {"arena_width_m", num([](SimConfig& c) -> double& { return c.network.geometry.arena.x_max; })},
      {"arena_height_m", num([](SimConfig& c) -> double& { return c.network.geometry.arena.y_max; })},
      {"bs_x_m", num([](SimConfig& c) -> double& { return c.network.geometry.bs_pos.x(); })},
      {"bs_y_m", num([](SimConfig& c) -> double& { return c.network.geometry.bs_pos.y(); })},
      {"uav_x0_m", num([](SimConfig& c) -> double& { return c.network.geometry.uav_start.x(); })},
      {"uav_y0_m", num([](SimConfig& c) -> double& { return c.network.geometry.uav_start.y(); })},
      {"uav_altitude_m", num([](SimConfig& c) -> double& { return c.network.geometry.uav_start.z(); })},
      {"uav_step_m", num([](SimConfig& c) -> double& { return c.network.geometry.uav_step_m; })},
      // channel
      {"ref_pathloss_db", num([](SimConfig& c) -> double& { return c.network.channel.ref_pathloss_db; })},
      {"pathloss_exponent", num([](SimConfig& c) -> double& { return c.network.channel.beta; })},
      {"los_a", num([](SimConfig& c) -> double& { return c.network.channel.los_a; })},
      {"los_b", num([](SimConfig& c) -> double& { return c.network.channel.los_b; })},
      {"bandwidth_hz", num([](SimConfig& c) -> double& { return c.network.channel.bandwidth_hz; })},
      {"noise_power_dbm", dbm([](SimConfig& c) -> double& { return c.network.channel.noise_power_w; })},
      {"tx_power_dbm", dbm([](SimConfig& c) -> double& { return c.network.channel.tx_power_w; })},
      // compute
      {"f_ue_hz", num([](SimConfig& c) -> double& { return c.network.compute.f_ue; })},
      {"f_uav_hz", num([](SimConfig& c) -> double& { return c.network.compute.f_uav; })},
      {"f_bs_hz", num([](SimConfig& c) -> double& { return c.network.compute.f_bs; })},
      {"kappa_ue", num([](SimConfig& c) -> double& { return c.network.compute.kappa_ue; })},
      {"kappa_uav", num([](SimConfig& c) -> double& { return c.network.compute.kappa_uav; })},
      {"kappa_bs", num([](SimConfig& c) -> double& { return c.network.compute.kappa_bs; })},
      {"cycles_per_bit", num([](SimConfig& c) -> double& { return c.network.compute.cycles_per_bit; })},
      {"slot_s", num([](SimConfig& c) -> double& { return c.network.compute.slot_s; })},
      {"packet_bits",
       {[](SimConfig& c, const std::string& k, const std::string& v) { c.network.compute.packet_bits = to_int(k, v); },
        [](const SimConfig& c) { return std::to_string(c.network.compute.packet_bits); }}},
      // learning
      {"agent",
       {[](SimConfig& c, const std::string& k, const std::string& v) {
          if (v == "kernel") c.agent = AgentKind::Kernel;
          else if (v == "dnn") c.agent = AgentKind::Dnn;
          else throw ConfigError(k, "expected kernel or dnn, got '" + v + "'");
        },
        [](const SimConfig& c) { return to_string(c.agent); }}},
      {"timeslots",
       {[](SimConfig& c, const std::string& k, const std::string& v) { c.timeslots = to_int(k, v); },
        [](const SimConfig& c) { return std::to_string(c.timeslots); }}},
      {"n_step", count([](SimConfig& c) -> std::size_t& { return c.n_step; })},
      {"w_e", num([](SimConfig& c) -> double& { return c.w_e; })},
      {"w_d", num([](SimConfig& c) -> double& { return c.w_d; })},
      {"gamma_r", num([](SimConfig& c) -> double& { return c.gamma_r; })},
      {"epsilon", num([](SimConfig& c) -> double& { return c.epsilon; })},
      {"epsilon_final", num([](SimConfig& c) -> double& { return c.epsilon_final; })},
      {"epsilon_decay_slots",
       {[](SimConfig& c, const std::string& k, const std::string& v) { c.epsilon_decay_slots = to_int(k, v); },
        [](const SimConfig& c) { return std::to_string(c.epsilon_decay_slots); }}},
      {"alpha", num([](SimConfig& c) -> double& { return c.alpha; })},
      {"k_r", num([](SimConfig& c) -> double& { return c.k_r; })},
      {"mu_q", num([](SimConfig& c) -> double& { return c.mu_q; })},
      {"mu_d", num([](SimConfig& c) -> double& { return c.mu_d; })},
      {"mu_0", num([](SimConfig& c) -> double& { return c.mu_0; })},
      {"sigma_s1", num([](SimConfig& c) -> double& { return c.sigma_s1; })},
      {"sigma_s2", num([](SimConfig& c) -> double& { return c.sigma_s2; })},
      {"sigma_a", num([](SimConfig& c) -> double& { return c.sigma_a; })},
      {"reward_scale_e", num([](SimConfig& c) -> double& { return c.reward_scale_e; })},
      {"reward_scale_d", num([](SimConfig& c) -> double& { return c.reward_scale_d; })},
      {"window_order",
       {[](SimConfig& c, const std::string& k, const std::string& v) {
          if (v == "oldest_first") c.window_order = morl::WindowOrder::OldestFirst;
          else if (v == "newest_first") c.window_order = morl::WindowOrder::NewestFirst;
          else throw ConfigError(k, "expected oldest_first or newest_first, got '" + v + "'");
        },
        [](const SimConfig& c) {
          return std::string(c.window_order == morl::WindowOrder::OldestFirst ? "oldest_first" : "newest_first");
        }}},
      // dnn baseline
      {"dnn_hidden", count([](SimConfig& c) -> std::size_t& { return c.dnn_hidden; })},
      {"dnn_layers", count([](SimConfig& c) -> std::size_t& { return c.dnn_layers; })},
      {"dnn_batch", count([](SimConfig& c) -> std::size_t& { return c.dnn_batch; })},
      {"dnn_replay", count([](SimConfig& c) -> std::size_t& { return c.dnn_replay; })},
      {"dnn_target_period", count([](SimConfig& c) -> std::size_t& { return c.dnn_target_period; })},
      {"adam_step", num([](SimConfig& c) -> double& { return c.adam.step_size; })},
      {"adam_beta1", num([](SimConfig& c) -> double& { return c.adam.beta1; })},
      {"adam_beta2", num([](SimConfig& c) -> double& { return c.adam.beta2; })},
      {"adam_epsilon", num([](SimConfig& c) -> double& { return c.adam.epsilon; })},
      // run
      {"seeds",
       {[](SimConfig& c, const std::string& k, const std::string& v) {
          c.seeds.clear();
          std::stringstream ss(v);
          std::string item;
          while (std::getline(ss, item, ',')) {
            const auto i = to_int(k, trim(item));
            if (i < 0) throw ConfigError(k, "seeds must be >= 0");
            c.seeds.push_back(static_cast<std::uint64_t>(i));
          }
        },
        [](const SimConfig& c) {
          std::string s;
          for (std::size_t i = 0; i < c.seeds.size(); ++i) s += (i ? "," : "") + std::to_string(c.seeds[i]);
          return s;
        }}},
      {"out_dir",
       {[](SimConfig& c, const std::string&, const std::string& v) { c.out_dir = v; },
        [](const SimConfig& c) { return c.out_dir; }}},
      {"timing_in_metrics",
       {[](SimConfig& c, const std::string& k, const std::string& v) { c.timing_in_metrics = to_bool(k, v); },
        [](const SimConfig& c) { return std::string(c.timing_in_metrics ? "true" : "false"); }}},
  };
  return keys;
}

const std::vector<std::string>& ue_fields() {
  static const std::vector<std::string> f = {"x_m", "y_m", "base_bits", "peak_bits", "period",
                                             "phase", "waveform", "duty", "jitter"};
  return f;
}

bool apply_ue_setting(SimConfig& cfg, const std::string& key, const std::string& value) {
  if (key.rfind("ue", 0) != 0) return false;
  const auto dot = key.find('.');
  if (dot == std::string::npos || dot == 2) return false;
  const auto idx_text = key.substr(2, dot - 2);
  if (idx_text.find_first_not_of("0123456789") != std::string::npos) return false;
  const auto idx = std::stoul(idx_text);
  const auto field = key.substr(dot + 1);
  if (idx < 1 || idx > cfg.network.num_ues())
    throw ConfigError(key, "UE index outside 1.." + std::to_string(cfg.network.num_ues()));
  auto& pos = cfg.network.geometry.ue_pos[idx - 1];
  auto& task = cfg.network.tasks[idx - 1];
  if (field == "x_m") pos.x() = to_double(key, value);
  else if (field == "y_m") pos.y() = to_double(key, value);
  else if (field == "base_bits") task.base_bits = to_double(key, value);
  else if (field == "peak_bits") task.peak_bits = to_double(key, value);
  else if (field == "period") task.period = to_int(key, value);
  else if (field == "phase") task.phase = to_int(key, value);
  else if (field == "duty") task.duty = to_double(key, value);
  else if (field == "jitter") task.jitter = to_double(key, value);
  else if (field == "waveform") {
    try {
      task.waveform = mec::parse_waveform(value);
    } catch (const std::invalid_argument&) {
      throw ConfigError(key, "expected square or triangular, got '" + value + "'");
    }
  } else {
    throw ConfigError(key, "unknown key");
  }
  return true;
}

std::string ue_value(const SimConfig& cfg, std::size_t m, const std::string& field) {
  const auto& pos = cfg.network.geometry.ue_pos[m];
  const auto& task = cfg.network.tasks[m];
  if (field == "x_m") return fmt(pos.x());
  if (field == "y_m") return fmt(pos.y());
  if (field == "base_bits") return fmt(task.base_bits);
  if (field == "peak_bits") return fmt(task.peak_bits);
  if (field == "period") return std::to_string(task.period);
  if (field == "phase") return std::to_string(task.phase);
  if (field == "duty") return fmt(task.duty);
  if (field == "jitter") return fmt(task.jitter);
  return mec::to_string(task.waveform);
}

void set_num_ues(SimConfig& cfg, const std::string& value) {
  const auto m = to_int("num_ues", value);
  if (m < 1) throw ConfigError("num_ues", "must be >= 1");
  auto fresh = mec::NetworkConfig::defaults(static_cast<std::size_t>(m));
  cfg.network.geometry.ue_pos = fresh.geometry.ue_pos;
  cfg.network.tasks = fresh.tasks;
}

}  // namespace

void apply_setting(SimConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "num_ues") return set_num_ues(cfg, value);
  const auto& keys = global_keys();
  if (const auto it = keys.find(key); it != keys.end()) return it->second.set(cfg, key, value);
  if (apply_ue_setting(cfg, key, value)) return;
  throw ConfigError(key, "unknown key");
}

void SimConfig::validate() const {
  network.validate();
  if (timeslots < 1) throw ConfigError("timeslots", "must be >= 1");
  if (n_step < 1) throw ConfigError("n_step", "must be >= 1");
  if (!(w_e >= 0)) throw ConfigError("w_e", "must be >= 0");
  if (!(w_d >= 0)) throw ConfigError("w_d", "must be >= 0");
  if (w_e == 0 && w_d == 0) throw ConfigError("w_e", "w_e and w_d must not both be zero");
  if (!(gamma_r >= 0 && gamma_r <= 1)) throw ConfigError("gamma_r", "must be in [0, 1]");
  if (!(epsilon >= 0 && epsilon <= 1)) throw ConfigError("epsilon", "must be in [0, 1]");
  if (!(epsilon_final >= 0 && epsilon_final <= 1)) throw ConfigError("epsilon_final", "must be in [0, 1]");
  if (epsilon_decay_slots < 0) throw ConfigError("epsilon_decay_slots", "must be >= 0");
  if (!(alpha > 0)) throw ConfigError("alpha", "must be > 0");
  if (!(k_r >= 0 && k_r <= 1)) throw ConfigError("k_r", "must be in [0, 1]");
  if (!(mu_q > 0)) throw ConfigError("mu_q", "must be > 0");
  if (!(mu_d > 0)) throw ConfigError("mu_d", "must be > 0");
  if (!(mu_0 > 0 && mu_0 < 1)) throw ConfigError("mu_0", "must be in (0, 1)");
  if (!(sigma_s1 > 0)) throw ConfigError("sigma_s1", "must be > 0");
  if (!(sigma_s2 > 0)) throw ConfigError("sigma_s2", "must be > 0");
  if (!(sigma_a > 0)) throw ConfigError("sigma_a", "must be > 0");
  if (!(reward_scale_e > 0)) throw ConfigError("reward_scale_e", "must be > 0");
  if (!(reward_scale_d > 0)) throw ConfigError("reward_scale_d", "must be > 0");
  if (dnn_hidden < 1) throw ConfigError("dnn_hidden", "must be >= 1");
  if (dnn_batch < 1) throw ConfigError("dnn_batch", "must be >= 1");
  if (dnn_replay < dnn_batch) throw ConfigError("dnn_replay", "must be >= dnn_batch");
  if (dnn_target_period < 1) throw ConfigError("dnn_target_period", "must be >= 1");
  if (!(adam.step_size > 0)) throw ConfigError("adam_step", "must be > 0");
  if (!(adam.beta1 >= 0 && adam.beta1 < 1)) throw ConfigError("adam_beta1", "must be in [0, 1)");
  if (!(adam.beta2 >= 0 && adam.beta2 < 1)) throw ConfigError("adam_beta2", "must be in [0, 1)");
  if (!(adam.epsilon > 0)) throw ConfigError("adam_epsilon", "must be > 0");
  if (seeds.empty()) throw ConfigError("seeds", "at least one seed required");
}

double SimConfig::epsilon_at(std::int64_t slot) const {
  if (epsilon_decay_slots <= 0 || slot >= epsilon_decay_slots) return epsilon_decay_slots <= 0 ? epsilon : epsilon_final;
  const double frac = static_cast<double>(slot) / static_cast<double>(epsilon_decay_slots);
  return epsilon + (epsilon_final - epsilon) * frac;
}

morl::KernelAgentParams SimConfig::kernel_params() const {
  morl::KernelAgentParams p;
  p.alpha = alpha;
  p.k_r = k_r;
  p.gamma = gamma_r;
  p.n = n_step;
  p.w_e = w_e;
  p.w_d = w_d;
  p.scales = {sigma_s1, sigma_s2, sigma_a};
  p.mu0 = mu_0;
  p.order = window_order;
  return p;
}

dnn::DnnAgentParams SimConfig::dnn_params() const {
  dnn::DnnAgentParams p;
  p.hidden.assign(dnn_layers, dnn_hidden);
  p.batch = dnn_batch;
  p.replay_capacity = dnn_replay;
  p.target_period = dnn_target_period;
  p.gamma = gamma_r;
  p.w_e = w_e;
  p.w_d = w_d;
  p.adam = adam;
  return p;
}

std::vector<std::string> known_keys(const SimConfig& cfg) {
  std::vector<std::string> out{"num_ues"};
  for (const auto& [k, _] : global_keys()) out.push_back(k);
  for (std::size_t m = 0; m < cfg.network.num_ues(); ++m)
    for (const auto& f : ue_fields()) out.push_back("ue" + std::to_string(m + 1) + "." + f);
  return out;
}

std::string SimConfig::to_text() const {
  std::ostringstream os;
  os << "num_ues = " << network.num_ues() << '\n';
  for (const auto& [k, e] : global_keys()) os << k << " = " << e.get(*this) << '\n';
  for (std::size_t m = 0; m < network.num_ues(); ++m)
    for (const auto& f : ue_fields()) os << "ue" << m + 1 << '.' << f << " = " << ue_value(*this, m, f) << '\n';
  return os.str();
}

std::uint64_t SimConfig::hash() const {
  // FNV-1a over the resolved listing
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : to_text()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<Override> parse_override_list(std::string_view spec) {
  std::vector<Override> out;
  std::stringstream ss{std::string(spec)};
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      // list values such as seeds=1,2,3 continue the previous item
      if (out.empty()) throw ConfigError(trim(item), "expected key=value");
      out.back().second += "," + trim(item);
      continue;
    }
    out.emplace_back(trim(item.substr(0, eq)), trim(item.substr(eq + 1)));
  }
  return out;
}

SimConfig parse_config(std::string_view text, const std::vector<Override>& overrides) {
  std::vector<Override> settings;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError(t, "line " + std::to_string(lineno) + " is not of the form key = value");
    settings.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  settings.insert(settings.end(), overrides.begin(), overrides.end());

  SimConfig cfg;
  for (auto it = settings.rbegin(); it != settings.rend(); ++it) {
    if (it->first == "num_ues") {
      apply_setting(cfg, it->first, it->second);
      break;
    }
  }
  for (const auto& [k, v] : settings)
    if (k != "num_ues") apply_setting(cfg, k, v);
  cfg.validate();
  return cfg;
}

SimConfig load_config(const std::string& path, const std::vector<Override>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), overrides);
}

}  // namespace agmec::sim
