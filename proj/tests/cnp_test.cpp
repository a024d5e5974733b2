#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

namespace simoco {
namespace {

using testing::make_field;
using testing::whole_field_partition;

TEST(Cnp, HandTracedFiveNodes) {
  // Initial centroid (24, 24) reaches the four small-square nodes; their
  // centroid (5, 5) also reaches four, which is not an improvement.
  auto f = make_field({{0, 0}, {10, 0}, {0, 10}, {10, 10}, {100, 100}}, 45.0);
  const auto s = cnp_initial_sink_position(f, whole_field_partition(f));
  EXPECT_EQ(s.position, (Position{24, 24}));
  EXPECT_EQ(s.neighbor_count, 4);
  EXPECT_EQ(s.iterations, 1);
}

TEST(Cnp, SingleMember) {
  auto f = make_field({{50, 50}}, 45.0);
  const auto s = cnp_initial_sink_position(f, whole_field_partition(f));
  EXPECT_EQ(s.position, (Position{50, 50}));
  EXPECT_EQ(s.neighbor_count, 1);
}

TEST(Cnp, TightClusterStopsAfterOneIteration) {
  auto f = make_field({{10, 10}, {12, 11}, {9, 14}, {11, 8}}, 45.0);
  const auto s = cnp_initial_sink_position(f, whole_field_partition(f));
  EXPECT_EQ(s.iterations, 1);
  EXPECT_EQ(s.neighbor_count, 4);
}

TEST(Cnp, ClimbsTowardDenseCluster) {
  // Centroid of all is (36, 0): reaches the cluster only partly.
  auto f = make_field({{0, 0}, {2, 0}, {4, 0}, {6, 0}, {168, 0}}, 40.0);
  const auto s = cnp_initial_sink_position(f, whole_field_partition(f));
  // (36,0) covers x in [-4, 76] -> 4 nodes; centroid (3,0) also 4 -> stop.
  EXPECT_EQ(s.neighbor_count, 4);
  EXPECT_EQ(s.iterations, 1);

  // Centroid (70,0) covers {40,60,70,100} (4 nodes); the centroid of those,
  // (67.5, 0), adds x=30 -> 5 nodes; the next centroid (60, 0) loses x=100.
  auto g = make_field({{0, 0}, {30, 0}, {40, 0}, {60, 0}, {70, 0}, {100, 0}, {190, 0}}, 38.0);
  const auto t = cnp_initial_sink_position(g, whole_field_partition(g));
  EXPECT_EQ(t.iterations, 2);
  EXPECT_EQ(t.accepted_counts, (std::vector<int>{4, 5}));
  EXPECT_DOUBLE_EQ(t.position.x, 67.5);
}

TEST(Cnp, ZeroNeighborsTerminatesImmediately) {
  auto f = make_field({{0, 0}, {200, 0}}, 45.0);
  const auto s = cnp_initial_sink_position(f, whole_field_partition(f));
  EXPECT_EQ(s.position, (Position{100, 0}));
  EXPECT_EQ(s.neighbor_count, 0);
  EXPECT_EQ(s.iterations, 1);
}

TEST(Cnp, EmptyPartitionThrows) {
  auto f = make_field({{0, 0}}, 45.0);
  Partition empty;
  EXPECT_THROW(cnp_initial_sink_position(f, empty), Error);
}

TEST(Cnp, CountsOnlyOwnPartition) {
  auto f = make_field({{10, 10}, {20, 10}, {30, 10}}, 45.0);
  Partition p;
  p.member_ids = {0};
  const auto s = cnp_initial_sink_position(f, p);
  EXPECT_EQ(s.neighbor_count, 1);
}

TEST(Cnp, PropertiesOnRandomPartitions) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 60;
    const double side = 40 + unit_uniform(rng) * 200;
    const double range = 10 + unit_uniform(rng) * 60;
    auto f = testing::random_field(rng, n, side, range);
    const auto part = whole_field_partition(f);
    const auto s = cnp_initial_sink_position(f, part);

    ASSERT_GE(s.iterations, 1);
    EXPECT_LE(static_cast<std::size_t>(s.iterations), n);
    ASSERT_EQ(s.accepted_counts.size(), static_cast<std::size_t>(s.iterations));
    for (std::size_t i = 1; i < s.accepted_counts.size(); ++i)
      EXPECT_GT(s.accepted_counts[i], s.accepted_counts[i - 1]);
    EXPECT_GE(s.neighbor_count, s.accepted_counts.front());
    EXPECT_EQ(static_cast<std::size_t>(s.neighbor_count),
              one_hop_neighbors(f, s.position, false).size());

    // Rigid translation moves the answer by the same offset.
    auto moved = f;
    const Position off{1000.0 + trial, -500.0 - trial};
    for (auto& node : moved.nodes) node.pos = {node.pos.x + off.x, node.pos.y + off.y};
    const auto t = cnp_initial_sink_position(moved, part);
    EXPECT_NEAR(t.position.x, s.position.x + off.x, 1e-9);
    EXPECT_NEAR(t.position.y, s.position.y + off.y, 1e-9);
    EXPECT_EQ(t.neighbor_count, s.neighbor_count);
  }
}

}  // namespace
}  // namespace simoco
