#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "simoco/error.hpp"
#include "simoco/geometry.hpp"

namespace simoco {

using NodeId = std::uint32_t;

struct SensorNode {
  NodeId id = 0;
  Position pos;
  double energy = 0.0;  // joules
  bool alive = true;
};

/// Square deployment area with a fixed disk communication range.
/// Node ids equal their index in `nodes`.
struct NetworkField {
  std::vector<SensorNode> nodes;
  double side = 0.0;   // meters
  double range = 0.0;  // meters
  std::uint64_t seed = 0;
};

// Range is inclusive: a node at distance exactly `range` is a neighbor.
inline bool within_range(const Position& a, const Position& b, double range) {
  return euclidean_distance(a, b) <= range;
}

/// Ids of nodes within `field.range` of `p`, ascending.
inline std::vector<NodeId> one_hop_neighbors(const NetworkField& field,
                                             const Position& p,
                                             bool alive_only) {
  std::vector<NodeId> out;
  for (const auto& node : field.nodes) {
    if (alive_only && !node.alive) continue;
    if (within_range(node.pos, p, field.range)) out.push_back(node.id);
  }
  return out;
}

/// Uniform double in [0, 1) from the top 53 bits of one draw. Avoids
/// std::uniform_real_distribution, whose output is library-specific.
inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Side length that keeps n / side^2 equal to base_n / base_side^2.
inline double scaled_side(std::size_t n, double base_side, std::size_t base_n) {
  return base_side * std::sqrt(static_cast<double>(n) / static_cast<double>(base_n));
}

/// Places n nodes uniformly at random in a density-preserving square.
/// Positions are drawn from std::mt19937_64 seeded with `seed`, x then y
/// per node, so identical inputs give bit-identical fields.
inline NetworkField generate_network(std::size_t n, double base_side, std::size_t base_n,
                                     double range, std::uint64_t seed,
                                     double initial_energy) {
  if (n == 0) throw Error("node count must be positive");
  if (base_n == 0) throw Error("base node count must be positive");
  if (!(base_side > 0.0)) throw Error("base side must be positive");
  if (!(range > 0.0)) throw Error("range must be positive");
  if (initial_energy < 0.0) throw Error("initial energy must be non-negative");

  NetworkField field;
  field.side = scaled_side(n, base_side, base_n);
  field.range = range;
  field.seed = seed;
  field.nodes.reserve(n);

  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = unit_uniform(rng) * field.side;
    const double y = unit_uniform(rng) * field.side;
    field.nodes.push_back({static_cast<NodeId>(i), {x, y}, initial_energy, true});
  }
  return field;
}

}  // namespace simoco
