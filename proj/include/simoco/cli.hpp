#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "simoco/config.hpp"
#include "simoco/metrics.hpp"

namespace simoco::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitRuntime = 2;

// Flags shared by every subcommand. Values stay empty unless given so that
// they only override what the config file set.
struct CommonFlags {
  std::string config_path;
  std::string output_path;
  std::vector<std::string> settings;
  std::optional<std::string> mode;
  std::optional<std::size_t> nodes;
  std::optional<std::size_t> base_n;
  std::optional<double> base_side;
  std::optional<std::size_t> rounds;
  std::optional<double> range;
  std::optional<double> energy;
  std::optional<double> packet_bits;
  std::optional<std::string> traffic;
};

inline void add_common(CLI::App* app, CommonFlags& f) {
  app->add_option("--config", f.config_path, "flat key = value scenario file");
  app->add_option("-o,--output", f.output_path, "output file (default: standard output)");
  app->add_option("--set", f.settings, "override any config key: key=value");
  app->add_option("--nodes", f.nodes, "node count");
  app->add_option("--base-n", f.base_n, "node count of the unscaled field");
  app->add_option("--base-side", f.base_side, "side of the unscaled field in meters");
  app->add_option("--rounds", f.rounds, "maximum number of rounds");
  app->add_option("--range", f.range, "communication range in meters");
  app->add_option("--energy", f.energy, "initial node energy in joules");
  app->add_option("--packet-bits", f.packet_bits, "packet size in bits");
  app->add_option("--traffic", f.traffic, "all_nodes_each_round | random_sources[:count]");
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// File first, then --set entries, then dedicated flags.
inline ScenarioConfig resolve_config(ScenarioConfig cfg, const CommonFlags& f) {
  if (!f.config_path.empty()) apply_config_text(cfg, read_file(f.config_path));
  for (const auto& kv : f.settings) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
    apply_setting(cfg, detail::trim(std::string_view(kv).substr(0, eq)),
                  detail::trim(std::string_view(kv).substr(eq + 1)));
  }
  if (f.mode) apply_setting(cfg, "mode", *f.mode);
  if (f.nodes) cfg.n = *f.nodes;
  if (f.base_n) cfg.base_n = *f.base_n;
  if (f.base_side) cfg.base_side = *f.base_side;
  if (f.rounds) cfg.max_rounds = *f.rounds;
  if (f.range) cfg.range = *f.range;
  if (f.energy) cfg.initial_energy = *f.energy;
  if (f.packet_bits) cfg.radio.packet_bits = *f.packet_bits;
  if (f.traffic) apply_setting(cfg, "traffic", *f.traffic);
  cfg.validate();
  return cfg;
}

/// "N" means seeds 1..N; "a,b,c" is an explicit list.
inline std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  if (text.find(',') != std::string::npos) return parse_list<std::uint64_t>("seeds", text);
  const auto count = parse_list<std::uint64_t>("seeds", text).front();
  if (count == 0) throw ConfigError("seed count must be positive");
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 1; s <= count; ++s) seeds.push_back(s);
  return seeds;
}

/// SIMOCO_THREADS caps matrix parallelism; unset or 0 means all cores.
inline unsigned matrix_threads() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const char* env = std::getenv("SIMOCO_THREADS");
  if (env == nullptr || *env == '\0') return hw;
  const auto n = parse_list<unsigned>("SIMOCO_THREADS", env).front();
  return n == 0 ? hw : n;
}

/// Placements and tours for the configured field, no simulation.
inline std::vector<SojournTour> compute_tours(const ScenarioConfig& cfg) {
  const auto field = generate_network(cfg.n, cfg.base_side, cfg.base_n, cfg.range, cfg.seed,
                                      cfg.initial_energy);
  std::vector<SojournTour> tours;
  for (const auto& part : quadrant_partition(field)) {
    if (part.empty()) continue;
    tours.push_back(generate_tour(field, part, cnp_initial_sink_position(field, part)));
  }
  return tours;
}

inline void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    out.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file '" + path + "'");
  file << text;
  if (!file) throw std::runtime_error("failed writing '" + path + "'");
}

/// Entry point behind the `simoco` binary. Exit codes: 0 success,
/// 1 configuration or usage error, 2 runtime failure.
inline int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out,
                              std::ostream& err) {
  CLI::App app{"Static and mobile (SiMoCo) sink simulator for partitioned sensor networks"};
  app.require_subcommand(1);

  CommonFlags run_flags, matrix_flags, tour_flags;
  std::uint64_t run_seed = 1, tour_seed = 1;
  std::string seeds_text = "10";
  std::string sizes_text;

  auto* run = app.add_subcommand("run", "simulate one scenario and write its per-round trace");
  add_common(run, run_flags);
  run->add_option("--mode", run_flags.mode, "static | mobile");
  auto* run_seed_opt = run->add_option("--seed", run_seed, "deployment and traffic seed");

  auto* matrix = app.add_subcommand("matrix", "run the size x mode x seed matrix and write CSV");
  add_common(matrix, matrix_flags);
  matrix->add_option("--sizes", sizes_text, "comma-separated node counts (default 50..300)");
  matrix->add_option("--seeds", seeds_text, "seed count N (seeds 1..N) or a comma list");

  auto* tour = app.add_subcommand("tour", "compute CNP placements and SiMoCo tours only");
  add_common(tour, tour_flags);
  auto* tour_seed_opt = tour->add_option("--seed", tour_seed, "deployment seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n\n" << app.help();
    return kExitConfig;
  }

  ScenarioConfig cfg;
  std::string output;
  std::string text;
  try {
    if (run->parsed()) {
      cfg = resolve_config(cfg, run_flags);
      if (run_seed_opt->count() > 0) cfg.seed = run_seed;
      output = run_flags.output_path;
    } else if (matrix->parsed()) {
      // Size sweeps scale from the 50-node 200 m field unless told otherwise.
      cfg.base_n = 50;
      cfg = resolve_config(cfg, matrix_flags);
      output = matrix_flags.output_path;
    } else {
      cfg = resolve_config(cfg, tour_flags);
      if (tour_seed_opt->count() > 0) cfg.seed = tour_seed;
      output = tour_flags.output_path;
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (run->parsed()) {
      text = export_trace(run_scenario(cfg));
    } else if (matrix->parsed()) {
      std::vector<std::size_t> sizes(kDefaultSizes.begin(), kDefaultSizes.end());
      std::vector<std::uint64_t> seeds;
      try {
        if (!sizes_text.empty()) sizes = parse_list<std::size_t>("sizes", sizes_text);
        seeds = parse_seeds(seeds_text);
      } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
      }
      const auto rows = run_experiment_matrix(cfg, sizes, seeds, matrix_threads());
      for (const auto& r : rows)
        if (!r.report)
          err << "cell size=" << r.size << " mode=" << to_string(r.mode) << " seed=" << r.seed
              << " failed: " << r.error << '\n';
      text = emit_csv(rows);
    } else {
      text = export_tours(compute_tours(cfg));
    }
    write_output(output, text, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace simoco::cli
