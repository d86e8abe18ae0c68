#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "agmec/dnn/dnn_agent.hpp"
#include "agmec/mec/network_config.hpp"
#include "agmec/morl/kernel_agent.hpp"

namespace agmec::sim {

enum class AgentKind { Kernel, Dnn };

std::string to_string(AgentKind k);

using Override = std::pair<std::string, std::string>;

// Everything one experiment needs. Defaults are listed in the README.
struct SimConfig {
  mec::NetworkConfig network = mec::NetworkConfig::defaults();

  AgentKind agent = AgentKind::Kernel;
  std::int64_t timeslots = 10000;
  std::size_t n_step = 5;
  double w_e = 1;
  double w_d = 1;
  double gamma_r = 0.3;
  double epsilon = 0.1;
  double epsilon_final = 0.01;
  std::int64_t epsilon_decay_slots = 3000;  // 0 keeps epsilon fixed
  double alpha = 0.01;
  double k_r = 0.001;
  double mu_q = 2;
  double mu_d = 0.3;
  double mu_0 = 0.82;
  double sigma_s1 = 200;
  double sigma_s2 = 1;
  double sigma_a = 1;
  // Learners see [-E * scale_e, -D * scale_d]: joules and megabits by default.
  double reward_scale_e = 1;
  double reward_scale_d = 1e-6;
  morl::WindowOrder window_order = morl::WindowOrder::OldestFirst;

  std::size_t dnn_hidden = 64;
  std::size_t dnn_layers = 3;
  std::size_t dnn_batch = 64;
  std::size_t dnn_replay = 10000;
  std::size_t dnn_target_period = 100;
  dnn::AdamParams adam;

  std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4};
  std::string out_dir = "out";
  bool timing_in_metrics = false;

  void validate() const;
  double epsilon_at(std::int64_t slot) const;

  morl::KernelAgentParams kernel_params() const;
  dnn::DnnAgentParams dnn_params() const;

  // Fully resolved key = value listing, parseable by parse_config.
  std::string to_text() const;
  std::uint64_t hash() const;
};

// Sets one key; throws ConfigError naming the key for unknown keys and
// unparseable or out-of-range values.
void apply_setting(SimConfig& cfg, const std::string& key, const std::string& value);

// Parses the flat text format: one `key = value` per line, `#` starts a
// comment, blank lines ignored. `num_ues` is applied before any other key so
// per-UE keys address the resized layout. Overrides win over file settings.
SimConfig parse_config(std::string_view text, const std::vector<Override>& overrides = {});
SimConfig load_config(const std::string& path, const std::vector<Override>& overrides = {});

// "k=v,k=v" -> overrides
std::vector<Override> parse_override_list(std::string_view spec);

// Names of every recognised key (per-UE keys shown for the current layout).
std::vector<std::string> known_keys(const SimConfig& cfg);

}  // namespace agmec::sim
