#pragma once

#include <array>
#include <vector>

#include "simoco/network.hpp"

namespace simoco {

struct Rect {
  double x_lo = 0.0;
  double y_lo = 0.0;
  double x_hi = 0.0;
  double y_hi = 0.0;

  bool contains(const Position& p) const {
    return p.x >= x_lo && p.x <= x_hi && p.y >= y_lo && p.y <= y_hi;
  }
  Position center() const { return {(x_lo + x_hi) / 2.0, (y_lo + y_hi) / 2.0}; }
};

/// One of the four sub-networks, each served by its own sink.
struct Partition {
  int id = 0;
  std::vector<NodeId> member_ids;  // ascending
  Rect bounds;

  bool empty() const { return member_ids.empty(); }
};

inline constexpr int kPartitionCount = 4;

// Quadrant index: bit 0 = right half, bit 1 = upper half. A coordinate equal
// to side/2 goes to the right/upper half.
inline int quadrant_of(const Position& p, double side) {
  const double mid = side / 2.0;
  return (p.x >= mid ? 1 : 0) | (p.y >= mid ? 2 : 0);
}

/// Splits the square at side/2 on both axes. Partition ids: 0 lower-left,
/// 1 lower-right, 2 upper-left, 3 upper-right.
inline std::array<Partition, kPartitionCount> quadrant_partition(const NetworkField& field) {
  const double mid = field.side / 2.0;
  std::array<Partition, kPartitionCount> parts;
  for (int k = 0; k < kPartitionCount; ++k) {
    parts[k].id = k;
    const bool right = (k & 1) != 0;
    const bool upper = (k & 2) != 0;
    parts[k].bounds = {right ? mid : 0.0, upper ? mid : 0.0, right ? field.side : mid,
                       upper ? field.side : mid};
  }
  for (const auto& node : field.nodes) {
    parts[quadrant_of(node.pos, field.side)].member_ids.push_back(node.id);
  }
  return parts;
}

/// Member positions in member_ids order.
inline std::vector<Position> member_positions(const NetworkField& field,
                                              const Partition& part) {
  std::vector<Position> out;
  out.reserve(part.member_ids.size());
  for (NodeId id : part.member_ids) out.push_back(field.nodes[id].pos);
  return out;
}

}  // namespace simoco
