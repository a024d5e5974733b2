#pragma once

#include <vector>

#include "simoco/partition.hpp"

namespace simoco {

/// Initial sink position for one partition.
struct SinkPlacement {
  int partition_id = 0;
  Position position;
  int neighbor_count = 0;
  int iterations = 0;
  // Neighbor count of every accepted position, first entry = all-members centroid.
  std::vector<int> accepted_counts;
};

/// Partition members (alive flag ignored) within range of `p`.
inline std::vector<Position> partition_neighbors(const NetworkField& field,
                                                 const Partition& part,
                                                 const Position& p) {
  std::vector<Position> out;
  for (NodeId id : part.member_ids) {
    const auto& pos = field.nodes[id].pos;
    if (within_range(pos, p, field.range)) out.push_back(pos);
  }
  return out;
}

/// Centroid hill-climbing: start at the centroid of all members, then move
/// to the centroid of the current 1-hop neighbors for as long as that
/// strictly increases the neighbor count. Equal counts stop the climb.
inline SinkPlacement cnp_initial_sink_position(const NetworkField& field,
                                               const Partition& part) {
  if (part.empty()) throw Error("empty partition");

  SinkPlacement out;
  out.partition_id = part.id;
  out.position = centroid(member_positions(field, part));
  auto neighbors = partition_neighbors(field, part, out.position);
  out.neighbor_count = static_cast<int>(neighbors.size());
  out.iterations = 1;
  out.accepted_counts.push_back(out.neighbor_count);

  while (!neighbors.empty()) {
    const Position candidate = centroid(neighbors);
    auto candidate_neighbors = partition_neighbors(field, part, candidate);
    if (candidate_neighbors.size() <= neighbors.size()) break;
    out.position = candidate;
    neighbors = std::move(candidate_neighbors);
    out.neighbor_count = static_cast<int>(neighbors.size());
    out.accepted_counts.push_back(out.neighbor_count);
    ++out.iterations;
  }
  return out;
}

}  // namespace simoco
