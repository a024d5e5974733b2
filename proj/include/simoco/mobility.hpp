#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "simoco/cnp.hpp"
#include "simoco/format.hpp"

namespace simoco {

struct CoverageBufferEntry {
  NodeId node_id = 0;
  Position pos;
  double initial_distance = 0.0;
};

/// Partition members not covered by the initial sink position, farthest
/// first (ties by ascending node id). The order is fixed once built.
struct CoverageBuffer {
  std::vector<CoverageBufferEntry> entries;

  bool empty() const { return entries.empty(); }
  std::size_t size() const { return entries.size(); }
};

/// Sojourn positions of one sink. The tour implicitly returns to `initial`
/// after the last point.
struct SojournTour {
  int partition_id = 0;
  Position initial;
  std::vector<Position> points;
  std::vector<NodeId> targets;  // buffer head each point was stepped toward
  int step_count = 0;

  /// Position held during round `round` (1-based) when cycling one
  /// position per round: initial, points[0], ..., points[last], initial, ...
  Position position_at_round(std::size_t round) const {
    const std::size_t cycle = points.size() + 1;
    const std::size_t idx = (round - 1) % cycle;
    return idx == 0 ? initial : points[idx - 1];
  }
};

inline CoverageBuffer build_coverage_buffer(const NetworkField& field, const Partition& part,
                                            const Position& sink) {
  CoverageBuffer buf;
  for (NodeId id : part.member_ids) {
    const auto& pos = field.nodes[id].pos;
    const double d = euclidean_distance(pos, sink);
    if (d > field.range) buf.entries.push_back({id, pos, d});
  }
  std::sort(buf.entries.begin(), buf.entries.end(),
            [](const CoverageBufferEntry& a, const CoverageBufferEntry& b) {
              if (a.initial_distance != b.initial_distance)
                return a.initial_distance > b.initial_distance;
              return a.node_id < b.node_id;
            });
  return buf;
}

/// One SiMoCo step: with D = |target - current| and move = D - range,
/// returns (move * current + range * target) / D, the point `range` meters
/// from `current` toward `target`.
inline Position next_sojourn_point(const Position& current, const Position& target,
                                   double range) {
  const double d_fs = euclidean_distance(current, target);
  if (d_fs == 0.0) throw Error("degenerate segment");
  if (d_fs <= range) throw Error("target already covered");
  const double move = d_fs - range;
  return {(move * current.x + range * target.x) / d_fs,
          (move * current.y + range * target.y) / d_fs};
}

/// Upper bound on tour steps before generate_tour gives up.
inline std::size_t tour_iteration_cap(const NetworkField& field) {
  const auto per_target = static_cast<std::size_t>(
      std::ceil(field.side * std::sqrt(2.0) / field.range));
  return 4 * field.nodes.size() * std::max<std::size_t>(per_target, 1);
}

/// Runs the coverage walk for one partition: step toward the buffer head,
/// drop every buffered node the new position covers, repeat until empty.
inline SojournTour generate_tour(const NetworkField& field, const Partition& part,
                                 const SinkPlacement& sink) {
  SojournTour tour;
  tour.partition_id = part.id;
  tour.initial = sink.position;

  auto pending = build_coverage_buffer(field, part, sink.position).entries;
  const std::size_t cap = tour_iteration_cap(field);
  Position current = sink.position;

  while (!pending.empty()) {
    if (tour.points.size() >= cap) throw Error("tour did not converge");
    current = next_sojourn_point(current, pending.front().pos, field.range);
    tour.points.push_back(current);
    tour.targets.push_back(pending.front().node_id);
    std::erase_if(pending, [&](const CoverageBufferEntry& e) {
      return within_range(e.pos, current, field.range);
    });
  }
  tour.step_count = static_cast<int>(tour.points.size());
  return tour;
}

/// Trajectory export: one `partition_id,step_index,x,y` line per position,
/// step 0 being the initial sink position.
inline std::string export_tours(std::span<const SojournTour> tours) {
  std::string out;
  for (const auto& tour : tours) {
    auto line = [&](std::size_t step, const Position& p) {
      out += std::to_string(tour.partition_id);
      out += ',';
      out += std::to_string(step);
      out += ',';
      out += format_double(p.x);
      out += ',';
      out += format_double(p.y);
      out += '\n';
    };
    line(0, tour.initial);
    for (std::size_t i = 0; i < tour.points.size(); ++i) line(i + 1, tour.points[i]);
  }
  return out;
}

}  // namespace simoco
