#pragma once

#include <algorithm>
#include <deque>
#include <limits>
#include <optional>
#include <vector>

#include "simoco/energy.hpp"
#include "simoco/partition.hpp"

namespace simoco {

/// Virtual vertex id of the partition sink.
inline constexpr NodeId kSinkVertex = std::numeric_limits<NodeId>::max();

/// Disk graph over the alive members of one partition plus the sink.
/// Vertices are addressed locally by their index into `ids`.
struct ConnectivityGraph {
  Position sink_pos;
  std::vector<NodeId> ids;                      // ascending node ids
  std::vector<Position> pos;
  std::vector<double> energy;                   // residual energy at build time
  std::vector<std::vector<std::size_t>> adj;    // local indices, ascending
  std::vector<bool> sink_adjacent;

  std::optional<std::size_t> local_index(NodeId id) const {
    auto it = std::lower_bound(ids.begin(), ids.end(), id);
    if (it == ids.end() || *it != id) return std::nullopt;
    return static_cast<std::size_t>(it - ids.begin());
  }

  /// Neighbor ids of `id` (kSinkVertex for the sink), ascending, with the
  /// sink listed last.
  std::vector<NodeId> neighbors(NodeId id) const {
    std::vector<NodeId> out;
    if (id == kSinkVertex) {
      for (std::size_t i = 0; i < ids.size(); ++i)
        if (sink_adjacent[i]) out.push_back(ids[i]);
      return out;
    }
    auto li = local_index(id);
    if (!li) return out;
    for (std::size_t j : adj[*li]) out.push_back(ids[j]);
    if (sink_adjacent[*li]) out.push_back(kSinkVertex);
    return out;
  }
};

inline ConnectivityGraph build_graph(const NetworkField& field, const Partition& part,
                                     const Position& sink_pos) {
  ConnectivityGraph g;
  g.sink_pos = sink_pos;
  for (NodeId id : part.member_ids) {
    const auto& node = field.nodes[id];
    if (!node.alive) continue;
    g.ids.push_back(id);
    g.pos.push_back(node.pos);
    g.energy.push_back(node.energy);
  }
  const std::size_t n = g.ids.size();
  g.adj.assign(n, {});
  g.sink_adjacent.assign(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    g.sink_adjacent[i] = within_range(g.pos[i], sink_pos, field.range);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (within_range(g.pos[i], g.pos[j], field.range)) {
        g.adj[i].push_back(j);
        g.adj[j].push_back(i);
      }
    }
  }
  return g;
}

/// Re-reads residual energies without touching adjacency.
inline void refresh_energies(ConnectivityGraph& g, const NetworkField& field) {
  for (std::size_t i = 0; i < g.ids.size(); ++i) g.energy[i] = field.nodes[g.ids[i]].energy;
}

/// Moves the virtual sink; node-to-node edges are unaffected.
inline void move_sink(ConnectivityGraph& g, const Position& sink_pos, double range) {
  g.sink_pos = sink_pos;
  for (std::size_t i = 0; i < g.ids.size(); ++i)
    g.sink_adjacent[i] = within_range(g.pos[i], sink_pos, range);
}

/// Hop list from a source node to the sink, ending with kSinkVertex.
struct Route {
  std::vector<NodeId> hops;
  Position sink_pos;

  std::size_t hop_count() const { return hops.empty() ? 0 : hops.size() - 1; }
};

inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

/// Hop distances to the sink for every vertex and the chosen next hop.
/// Among neighbors one hop closer, the next hop is the one with the highest
/// residual energy, then the lowest id. Nodes adjacent to the sink forward
/// to it directly.
struct RoutingTable {
  std::vector<std::size_t> hops_to_sink;   // kUnreachable if disconnected
  std::vector<std::size_t> next_hop;       // local index, or kUnreachable for "sink"

  explicit RoutingTable(const ConnectivityGraph& g) {
    const std::size_t n = g.ids.size();
    hops_to_sink.assign(n, kUnreachable);
    next_hop.assign(n, kUnreachable);
    std::deque<std::size_t> frontier;
    for (std::size_t i = 0; i < n; ++i) {
      if (g.sink_adjacent[i]) {
        hops_to_sink[i] = 1;
        frontier.push_back(i);
      }
    }
    while (!frontier.empty()) {
      const std::size_t u = frontier.front();
      frontier.pop_front();
      for (std::size_t v : g.adj[u]) {
        if (hops_to_sink[v] == kUnreachable) {
          hops_to_sink[v] = hops_to_sink[u] + 1;
          frontier.push_back(v);
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (hops_to_sink[i] == kUnreachable || hops_to_sink[i] == 1) continue;
      std::size_t best = kUnreachable;
      for (std::size_t v : g.adj[i]) {
        if (hops_to_sink[v] + 1 != hops_to_sink[i]) continue;
        // adj is ascending by local index, which is ascending by id, so a
        // strict comparison keeps the lowest id among equal energies.
        if (best == kUnreachable || g.energy[v] > g.energy[best]) best = v;
      }
      next_hop[i] = best;
    }
  }

  std::optional<Route> route_from(const ConnectivityGraph& g, std::size_t local) const {
    if (hops_to_sink[local] == kUnreachable) return std::nullopt;
    Route r;
    r.sink_pos = g.sink_pos;
    std::size_t cur = local;
    r.hops.push_back(g.ids[cur]);
    while (hops_to_sink[cur] > 1) {
      cur = next_hop[cur];
      r.hops.push_back(g.ids[cur]);
    }
    r.hops.push_back(kSinkVertex);
    return r;
  }
};

/// Fewest-hop route from `source` to the sink, or nullopt if none exists.
inline std::optional<Route> min_hop_route(const ConnectivityGraph& g, NodeId source) {
  auto li = g.local_index(source);
  if (!li) throw Error("source is dead or not in graph");
  return RoutingTable(g).route_from(g, *li);
}

struct DeliveryRecord {
  std::size_t hop_count = 0;
  double total_energy = 0.0;  // drawn from sensor nodes
  bool delivered = false;
  std::vector<NodeId> insolvent;  // nodes that could not pay; packet dropped
  std::vector<NodeId> deaths;     // nodes that fell below the death threshold
};

/// Charges one packet along `route`: each sender pays tx to the next hop,
/// each relay also pays rx; the sink pays nothing. The delivery is atomic:
/// if any node cannot afford its share nothing is deducted and the packet
/// is dropped. Nodes left below the death threshold are marked dead.
inline DeliveryRecord deliver_packet(NetworkField& field, const RadioEnergyModel& model,
                                     const Route& route) {
  if (route.hops.size() < 2 || route.hops.back() != kSinkVertex)
    throw Error("malformed route");
  const std::size_t senders = route.hops.size() - 1;
  for (std::size_t i = 0; i < senders; ++i) {
    const NodeId id = route.hops[i];
    if (id >= field.nodes.size() || !field.nodes[id].alive) throw Error("stale route");
  }

  DeliveryRecord rec;
  rec.hop_count = senders;
  std::vector<double> cost(senders, 0.0);
  for (std::size_t i = 0; i < senders; ++i) {
    const Position& from = field.nodes[route.hops[i]].pos;
    const Position& to = (i + 1 == senders) ? route.sink_pos : field.nodes[route.hops[i + 1]].pos;
    cost[i] = tx_energy(model, euclidean_distance(from, to));
    if (i > 0) cost[i] += rx_energy(model);
    if (field.nodes[route.hops[i]].energy < cost[i]) rec.insolvent.push_back(route.hops[i]);
  }
  if (!rec.insolvent.empty()) return rec;

  const double threshold = death_threshold(model);
  for (std::size_t i = 0; i < senders; ++i) {
    auto& node = field.nodes[route.hops[i]];
    node.energy -= cost[i];
    rec.total_energy += cost[i];
  }
  for (std::size_t i = 0; i < senders; ++i) {
    auto& node = field.nodes[route.hops[i]];
    if (node.alive && node.energy < threshold) {
      node.alive = false;
      rec.deaths.push_back(node.id);
    }
  }
  rec.delivered = true;
  return rec;
}

}  // namespace simoco
