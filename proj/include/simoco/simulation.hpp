#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "simoco/cnp.hpp"
#include "simoco/mobility.hpp"
#include "simoco/routing.hpp"

namespace simoco {

enum class SinkMode { kStatic, kMobile };

enum class TrafficKind {
  kAllNodesEachRound,  // every alive node sends one packet per round
  kRandomSources,      // `random_source_count` uniformly drawn alive sources
};

struct ScenarioConfig {
  SinkMode mode = SinkMode::kStatic;
  std::size_t n = 100;
  double base_side = 200.0;
  std::size_t base_n = 100;
  double range = 45.0;
  double initial_energy = 0.5;
  RadioEnergyModel radio;
  std::uint64_t seed = 1;
  std::size_t max_rounds = 20000;
  TrafficKind traffic = TrafficKind::kAllNodesEachRound;
  std::size_t random_source_count = 10;

  void validate() const {
    if (n == 0) throw ConfigError("n must be positive");
    if (base_n == 0) throw ConfigError("base_n must be positive");
    if (!(base_side > 0.0)) throw ConfigError("base_side must be positive");
    if (!(range > 0.0)) throw ConfigError("range must be positive");
    if (!(initial_energy >= 0.0)) throw ConfigError("initial_energy must be non-negative");
    if (max_rounds < 1) throw ConfigError("max_rounds must be at least 1");
    if (traffic == TrafficKind::kRandomSources && random_source_count < 1)
      throw ConfigError("random source count must be positive");
    try {
      radio.validate();
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
  }
};

inline const char* to_string(SinkMode m) { return m == SinkMode::kStatic ? "static" : "mobile"; }

struct PacketOutcome {
  NodeId source = 0;
  std::size_t hops = 0;
  double energy = 0.0;
  bool delivered = false;

  friend bool operator==(const PacketOutcome&, const PacketOutcome&) = default;
};

struct RoundRecord {
  std::size_t round_index = 0;  // 1-based
  std::array<std::optional<Position>, kPartitionCount> sink_positions;
  std::vector<PacketOutcome> deliveries;
  std::vector<NodeId> deaths;

  friend bool operator==(const RoundRecord&, const RoundRecord&) = default;
};

struct SimulationTrace {
  ScenarioConfig config;
  NetworkField initial_field;
  std::array<Partition, kPartitionCount> partitions;
  std::array<std::optional<SinkPlacement>, kPartitionCount> placements;
  std::array<std::optional<SojournTour>, kPartitionCount> tours;  // mobile mode only
  std::array<std::vector<NodeId>, kPartitionCount> initial_neighbor_sets;
  std::vector<RoundRecord> rounds;
  NetworkField final_field;
};

/// Seed of the traffic-source stream; distinct from the deployment stream
/// so both modes see the same field for the same seed.
inline std::uint64_t traffic_seed(std::uint64_t seed) { return seed ^ 0x9E3779B97F4A7C15ULL; }

namespace detail {

struct PartitionState {
  ConnectivityGraph graph;
  bool stale = true;  // adjacency must be rebuilt (deaths happened)
};

}  // namespace detail

/// Round-based static or SiMoCo-mobile simulation. Each round every
/// partition's sink takes its position (fixed CNP location, or the next
/// tour position), routes are recomputed on the current graph, and each
/// traffic source delivers one packet by min-hop routing. Stops after
/// max_rounds or once every node is dead.
inline SimulationTrace run_scenario(const ScenarioConfig& config) {
  config.validate();

  SimulationTrace trace;
  trace.config = config;
  NetworkField field = generate_network(config.n, config.base_side, config.base_n,
                                        config.range, config.seed, config.initial_energy);
  trace.initial_field = field;
  trace.partitions = quadrant_partition(field);

  std::vector<int> partition_of(field.nodes.size(), 0);
  for (const auto& part : trace.partitions) {
    if (part.empty()) continue;
    for (NodeId id : part.member_ids) partition_of[id] = part.id;
    const auto placement = cnp_initial_sink_position(field, part);
    trace.placements[part.id] = placement;
    for (NodeId id : part.member_ids)
      if (within_range(field.nodes[id].pos, placement.position, field.range))
        trace.initial_neighbor_sets[part.id].push_back(id);
    if (config.mode == SinkMode::kMobile)
      trace.tours[part.id] = generate_tour(field, part, placement);
  }

  std::mt19937_64 traffic_rng(traffic_seed(config.seed));
  std::array<detail::PartitionState, kPartitionCount> state;
  std::size_t alive_count = field.nodes.size();

  for (std::size_t round = 1; round <= config.max_rounds && alive_count > 0; ++round) {
    RoundRecord rec;
    rec.round_index = round;

    std::array<std::optional<RoutingTable>, kPartitionCount> tables;
    for (int k = 0; k < kPartitionCount; ++k) {
      if (!trace.placements[k]) continue;
      const Position sink = trace.tours[k] ? trace.tours[k]->position_at_round(round)
                                           : trace.placements[k]->position;
      rec.sink_positions[k] = sink;
      auto& st = state[k];
      if (st.stale) {
        st.graph = build_graph(field, trace.partitions[k], sink);
        st.stale = false;
      } else {
        move_sink(st.graph, sink, field.range);
        refresh_energies(st.graph, field);
      }
    }

    std::vector<NodeId> sources;
    std::vector<NodeId> alive_ids;
    for (const auto& node : field.nodes)
      if (node.alive) alive_ids.push_back(node.id);
    if (config.traffic == TrafficKind::kAllNodesEachRound) {
      sources = alive_ids;
    } else {
      for (std::size_t i = 0; i < config.random_source_count; ++i)
        sources.push_back(alive_ids[traffic_rng() % alive_ids.size()]);
    }

    std::vector<NodeId> insolvent;
    for (NodeId src : sources) {
      if (!field.nodes[src].alive) continue;
      const int k = partition_of[src];
      auto& st = state[k];
      if (st.stale) {
        st.graph = build_graph(field, trace.partitions[k], *rec.sink_positions[k]);
        st.stale = false;
        tables[k].reset();
      }
      if (!tables[k]) tables[k].emplace(st.graph);
      const auto route = tables[k]->route_from(st.graph, *st.graph.local_index(src));
      if (!route) continue;

      auto delivery = deliver_packet(field, config.radio, *route);
      rec.deliveries.push_back(
          {src, delivery.hop_count, delivery.total_energy, delivery.delivered});
      insolvent.insert(insolvent.end(), delivery.insolvent.begin(), delivery.insolvent.end());
      for (NodeId dead : delivery.deaths) {
        rec.deaths.push_back(dead);
        state[partition_of[dead]].stale = true;
        --alive_count;
      }
    }

    for (NodeId id : insolvent) {
      auto& node = field.nodes[id];
      if (!node.alive) continue;
      node.alive = false;
      rec.deaths.push_back(id);
      state[partition_of[id]].stale = true;
      --alive_count;
    }
    trace.rounds.push_back(std::move(rec));
  }
  trace.final_field = std::move(field);
  return trace;
}

// --- trace export -----------------------------------------------------------

inline nlohmann::ordered_json round_to_json(const RoundRecord& r) {
  nlohmann::ordered_json sinks = nlohmann::ordered_json::array();
  for (const auto& s : r.sink_positions) {
    if (s) sinks.push_back({s->x, s->y});
    else sinks.push_back(nullptr);
  }
  nlohmann::ordered_json deliveries = nlohmann::ordered_json::array();
  for (const auto& d : r.deliveries) deliveries.push_back({d.source, d.hops, d.energy, d.delivered});
  nlohmann::ordered_json out;
  out["round"] = r.round_index;
  out["sinks"] = std::move(sinks);
  out["deliveries"] = std::move(deliveries);
  out["deaths"] = r.deaths;
  return out;
}

/// One JSON object per line per round: round, sinks, deliveries, deaths.
inline std::string export_trace(const SimulationTrace& trace) {
  std::string out;
  for (const auto& r : trace.rounds) {
    out += round_to_json(r).dump();
    out += '\n';
  }
  return out;
}

inline RoundRecord round_from_json(const nlohmann::json& j) {
  RoundRecord r;
  r.round_index = j.at("round").get<std::size_t>();
  const auto& sinks = j.at("sinks");
  if (sinks.size() != kPartitionCount) throw Error("trace record needs four sinks");
  for (std::size_t k = 0; k < kPartitionCount; ++k) {
    if (!sinks[k].is_null()) r.sink_positions[k] = Position{sinks[k][0].get<double>(),
                                                            sinks[k][1].get<double>()};
  }
  for (const auto& d : j.at("deliveries"))
    r.deliveries.push_back({d[0].get<NodeId>(), d[1].get<std::size_t>(), d[2].get<double>(),
                            d[3].get<bool>()});
  r.deaths = j.at("deaths").get<std::vector<NodeId>>();
  return r;
}

/// Parses the per-round lines written by export_trace.
inline std::vector<RoundRecord> import_rounds(const std::string& text) {
  std::vector<RoundRecord> out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    if (end > start) {
      try {
        out.push_back(round_from_json(nlohmann::json::parse(text.substr(start, end - start))));
      } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("bad trace line: ") + e.what());
      }
    }
    start = end + 1;
  }
  return out;
}

}  // namespace simoco
