#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "simoco/simulation.hpp"

namespace simoco {

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ConfigError("invalid value for '" + std::string(key) + "': '" + std::string(text) + "'");
  return value;
}

}  // namespace detail

/// Sets one ScenarioConfig field by its name. Unknown keys are errors.
inline void apply_setting(ScenarioConfig& cfg, std::string_view key, std::string_view value) {
  using detail::parse_number;
  if (key == "mode") {
    if (value == "static") cfg.mode = SinkMode::kStatic;
    else if (value == "mobile") cfg.mode = SinkMode::kMobile;
    else throw ConfigError("mode must be 'static' or 'mobile'");
  } else if (key == "n") {
    cfg.n = parse_number<std::size_t>(key, value);
  } else if (key == "base_side") {
    cfg.base_side = parse_number<double>(key, value);
  } else if (key == "base_n") {
    cfg.base_n = parse_number<std::size_t>(key, value);
  } else if (key == "range") {
    cfg.range = parse_number<double>(key, value);
  } else if (key == "initial_energy") {
    cfg.initial_energy = parse_number<double>(key, value);
  } else if (key == "e_elec") {
    cfg.radio.e_elec = parse_number<double>(key, value);
  } else if (key == "e_amp") {
    cfg.radio.e_amp = parse_number<double>(key, value);
  } else if (key == "packet_bits") {
    cfg.radio.packet_bits = parse_number<double>(key, value);
  } else if (key == "seed") {
    cfg.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "max_rounds") {
    cfg.max_rounds = parse_number<std::size_t>(key, value);
  } else if (key == "traffic") {
    // "all_nodes_each_round", "random_sources" or "random_sources:<count>"
    if (value == "all_nodes_each_round" || value == "all") {
      cfg.traffic = TrafficKind::kAllNodesEachRound;
    } else if (value.starts_with("random_sources") || value.starts_with("random")) {
      cfg.traffic = TrafficKind::kRandomSources;
      const auto colon = value.find(':');
      if (colon != std::string_view::npos)
        cfg.random_source_count = parse_number<std::size_t>(key, value.substr(colon + 1));
    } else {
      throw ConfigError("traffic must be 'all_nodes_each_round' or 'random_sources[:count]'");
    }
  } else if (key == "random_source_count") {
    cfg.random_source_count = parse_number<std::size_t>(key, value);
  } else {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
}

/// Applies a flat `key = value` text; '#' starts a comment.
inline void apply_config_text(ScenarioConfig& cfg, std::string_view text) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    apply_setting(cfg, detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
  }
}

/// Parses "a,b,c" into unsigned integers.
template <typename T>
std::vector<T> parse_list(std::string_view key, std::string_view text) {
  std::vector<T> out;
  while (true) {
    auto comma = text.find(',');
    out.push_back(detail::parse_number<T>(key, detail::trim(text.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
  }
  return out;
}

}  // namespace simoco
