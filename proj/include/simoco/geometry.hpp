#pragma once

#include <cmath>
#include <span>

#include "simoco/error.hpp"

namespace simoco {

/// Planar position in meters.
struct Position {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Position&, const Position&) = default;
};

inline double euclidean_distance(const Position& a, const Position& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

/// Arithmetic mean of a nonempty point set.
inline Position centroid(std::span<const Position> points) {
  if (points.empty()) throw Error("empty point set");
  double sx = 0.0;
  double sy = 0.0;
  for (const auto& p : points) {
    sx += p.x;
    sy += p.y;
  }
  const auto n = static_cast<double>(points.size());
  return {sx / n, sy / n};
}

}  // namespace simoco
