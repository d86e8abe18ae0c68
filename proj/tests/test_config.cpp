#include <doctest.h>

#include <cmath>

#include "agmec/errors.hpp"
#include "agmec/sim/sim_config.hpp"

using namespace agmec;
using namespace agmec::sim;

namespace {

std::string error_key(const std::string& text, const std::vector<Override>& ov = {}) {
  try {
    parse_config(text, ov);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "";
}

}  // namespace

TEST_CASE("an empty file yields the defaults") {
  const SimConfig d;
  const auto c = parse_config("");
  CHECK(c.to_text() == d.to_text());
  CHECK(c.hash() == d.hash());
  CHECK(c.n_step == 5);
  CHECK(c.gamma_r == 0.3);
  CHECK(c.network.num_ues() == 5);
  CHECK(c.network.channel.bandwidth_hz == 6e6);
  CHECK(c.network.channel.noise_power_w == doctest::Approx(1e-12));
  CHECK(c.network.channel.tx_power_w == doctest::Approx(1.0));
  CHECK(c.network.compute.slot_s == 2.0);
}

TEST_CASE("comments, blanks and overrides") {
  const auto c = parse_config("# a comment\n\n n_step = 3  # trailing\nw_e=2\n", {{"n_step", "30"}});
  CHECK(c.n_step == 30);
  CHECK(c.w_e == 2);
  CHECK(parse_override_list("n_step=30, w_e=3") == std::vector<Override>{{"n_step", "30"}, {"w_e", "3"}});
  CHECK(parse_override_list("") .empty());
  CHECK(parse_override_list("seeds=1,2,3,w_e=2") == std::vector<Override>{{"seeds", "1,2,3"}, {"w_e", "2"}});
  CHECK_THROWS_AS(parse_override_list("n_step"), ConfigError);
}

TEST_CASE("errors name the offending key") {
  CHECK(error_key("bandwidth_hz = -6e6") == "bandwidth_hz");
  CHECK(error_key("no_such_key = 1") == "no_such_key");
  CHECK(error_key("n_step = 0") == "n_step");
  CHECK(error_key("n_step = 2.5") == "n_step");
  CHECK(error_key("alpha = abc") == "alpha");
  CHECK(error_key("agent = tabular") == "agent");
  CHECK(error_key("mu_0 = 1") == "mu_0");
  CHECK(error_key("ue6.x_m = 10") == "ue6.x_m");
  CHECK(error_key("ue1.waveform = sine") == "ue1.waveform");
  CHECK(error_key("", {{"gamma_r", "1.5"}}) == "gamma_r");
  CHECK(error_key("just some words") != "");
}

TEST_CASE("num_ues resizes the layout before per-UE keys apply") {
  const auto c = parse_config("ue7.base_bits = 12345\nnum_ues = 8\n");
  REQUIRE(c.network.num_ues() == 8);
  CHECK(c.network.tasks[6].base_bits == 12345);
  CHECK(c.network.geometry.ue_pos.size() == 8);
  CHECK(error_key("num_ues = 0") == "num_ues");
}

TEST_CASE("dBm keys convert to watts and back") {
  const auto c = parse_config("noise_power_dbm = -100\ntx_power_dbm = 20\n");
  CHECK(c.network.channel.noise_power_w == doctest::Approx(1e-13));
  CHECK(c.network.channel.tx_power_w == doctest::Approx(0.1));
  CHECK(c.to_text().find("tx_power_dbm = 20") != std::string::npos);
}

TEST_CASE("resolved text parses back to the same config") {
  SimConfig c = parse_config("num_ues = 3\nn_step = 30\nagent = dnn\nue2.x_m = 1234.5\nseeds = 4,9\nwindow_order = newest_first\n");
  const auto again = parse_config(c.to_text());
  CHECK(again.to_text() == c.to_text());
  CHECK(again.hash() == c.hash());
  CHECK(again.seeds == std::vector<std::uint64_t>{4, 9});
  CHECK(again.agent == AgentKind::Dnn);
  CHECK(again.window_order == morl::WindowOrder::NewestFirst);
  CHECK(parse_config("n_step = 6").hash() != c.hash());
}

TEST_CASE("every listed key is accepted by apply_setting with its own resolved value") {
  const SimConfig c = parse_config("n_step = 4\nue3.jitter = 0.2\n");
  const auto text = "\n" + c.to_text();
  SimConfig fresh;
  for (const auto& k : known_keys(c)) {
    INFO(k);
    const auto at = text.find("\n" + k + " = ");
    REQUIRE(at != std::string::npos);
    const auto start = at + k.size() + 4;
    CHECK_NOTHROW(apply_setting(fresh, k, text.substr(start, text.find('\n', start) - start)));
  }
  CHECK("\n" + fresh.to_text() == text);
}

TEST_CASE("epsilon decays linearly to its floor") {
  SimConfig c;
  c.epsilon = 0.1;
  c.epsilon_final = 0.01;
  c.epsilon_decay_slots = 100;
  CHECK(c.epsilon_at(0) == 0.1);
  CHECK(c.epsilon_at(50) == doctest::Approx(0.055));
  CHECK(c.epsilon_at(100) == doctest::Approx(0.01));
  CHECK(c.epsilon_at(5000) == doctest::Approx(0.01));
  c.epsilon_decay_slots = 0;
  CHECK(c.epsilon_at(5000) == 0.1);
}

TEST_CASE("agent parameter bundles carry the configured values") {
  const auto c = parse_config("n_step = 7\nw_e = 3\nalpha = 0.05\ndnn_hidden = 16\ndnn_layers = 2\n");
  const auto k = c.kernel_params();
  CHECK(k.n == 7);
  CHECK(k.w_e == 3);
  CHECK(k.alpha == 0.05);
  const auto d = c.dnn_params();
  CHECK(d.hidden == std::vector<std::size_t>{16, 16});
  CHECK(d.w_e == 3);
}
