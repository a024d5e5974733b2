#include <gtest/gtest.h>

#include "simoco/config.hpp"

namespace simoco {
namespace {

TEST(Config, FlatKeyValueText) {
  ScenarioConfig c;
  apply_config_text(c, R"(# experiment
mode = mobile
n = 150
base_n=50
base_side = 200
range = 40.5   # meters
initial_energy = 1
e_elec = 5e-8
e_amp = 1e-10
packet_bits = 4000
seed = 99
max_rounds = 1234
traffic = random_sources:25
)");
  EXPECT_EQ(c.mode, SinkMode::kMobile);
  EXPECT_EQ(c.n, 150u);
  EXPECT_EQ(c.base_n, 50u);
  EXPECT_EQ(c.range, 40.5);
  EXPECT_EQ(c.initial_energy, 1.0);
  EXPECT_EQ(c.radio.packet_bits, 4000.0);
  EXPECT_EQ(c.seed, 99u);
  EXPECT_EQ(c.max_rounds, 1234u);
  EXPECT_EQ(c.traffic, TrafficKind::kRandomSources);
  EXPECT_EQ(c.random_source_count, 25u);
  EXPECT_NO_THROW(c.validate());
}

TEST(Config, UnknownKeyIsError) {
  ScenarioConfig c;
  EXPECT_THROW(apply_config_text(c, "speed = 3\n"), ConfigError);
  EXPECT_THROW(apply_setting(c, "nodes", "3"), ConfigError);
}

TEST(Config, MalformedValues) {
  ScenarioConfig c;
  EXPECT_THROW(apply_setting(c, "n", "12x"), ConfigError);
  EXPECT_THROW(apply_setting(c, "mode", "flying"), ConfigError);
  EXPECT_THROW(apply_setting(c, "traffic", "bursty"), ConfigError);
  EXPECT_THROW(apply_config_text(c, "n 12\n"), ConfigError);
}

TEST(Config, ValidateRejectsBadValues) {
  ScenarioConfig c;
  c.max_rounds = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.radio.e_amp = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.traffic = TrafficKind::kRandomSources;
  c.random_source_count = 0;
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(Config, ParseList) {
  EXPECT_EQ(parse_list<std::size_t>("sizes", "50, 100,150"), (std::vector<std::size_t>{50, 100, 150}));
  EXPECT_THROW(parse_list<std::size_t>("sizes", "50,,100"), ConfigError);
}

}  // namespace
}  // namespace simoco
