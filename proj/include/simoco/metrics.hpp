#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "simoco/format.hpp"
#include "simoco/simulation.hpp"

namespace simoco {

struct MetricsReport {
  std::optional<double> avg_energy_per_packet;          // J; none if nothing delivered
  std::optional<std::size_t> rounds_to_neighbor_death;  // none if not reached
  std::optional<std::size_t> rounds_to_first_death;
  std::optional<double> avg_hop_count;
  std::size_t packets_delivered = 0;
};

using NeighborSets = std::array<std::vector<NodeId>, kPartitionCount>;

inline std::optional<double> avg_energy_per_packet(std::span<const RoundRecord> rounds) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& r : rounds)
    for (const auto& d : r.deliveries)
      if (d.delivered) {
        sum += d.energy;
        ++count;
      }
  if (count == 0) return std::nullopt;
  return sum / static_cast<double>(count);
}

inline std::optional<double> avg_hop_count(std::span<const RoundRecord> rounds) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& r : rounds)
    for (const auto& d : r.deliveries)
      if (d.delivered) {
        sum += static_cast<double>(d.hops);
        ++count;
      }
  if (count == 0) return std::nullopt;
  return sum / static_cast<double>(count);
}

inline std::optional<std::size_t> rounds_to_first_death(std::span<const RoundRecord> rounds) {
  for (const auto& r : rounds)
    if (!r.deaths.empty()) return r.round_index;
  return std::nullopt;
}

/// Earliest round at which some partition has lost every node of its
/// round-0 sink neighborhood. Partitions with an empty neighborhood are
/// ignored.
inline std::optional<std::size_t> rounds_to_neighbor_death(std::span<const RoundRecord> rounds,
                                                           const NeighborSets& initial) {
  std::map<NodeId, std::size_t> death_round;
  for (const auto& r : rounds)
    for (NodeId id : r.deaths) death_round.emplace(id, r.round_index);

  std::optional<std::size_t> best;
  for (const auto& set : initial) {
    if (set.empty()) continue;
    std::size_t last = 0;
    bool all_dead = true;
    for (NodeId id : set) {
      auto it = death_round.find(id);
      if (it == death_round.end()) {
        all_dead = false;
        break;
      }
      last = std::max(last, it->second);
    }
    if (all_dead && (!best || last < *best)) best = last;
  }
  return best;
}

inline MetricsReport compute_metrics(std::span<const RoundRecord> rounds,
                                     const NeighborSets& initial) {
  MetricsReport m;
  m.avg_energy_per_packet = avg_energy_per_packet(rounds);
  m.rounds_to_neighbor_death = rounds_to_neighbor_death(rounds, initial);
  m.rounds_to_first_death = rounds_to_first_death(rounds);
  m.avg_hop_count = avg_hop_count(rounds);
  for (const auto& r : rounds)
    for (const auto& d : r.deliveries) m.packets_delivered += d.delivered ? 1 : 0;
  return m;
}

inline MetricsReport compute_metrics(const SimulationTrace& trace) {
  return compute_metrics(trace.rounds, trace.initial_neighbor_sets);
}

// --- experiment matrix ------------------------------------------------------

struct MatrixRow {
  std::size_t size = 0;
  SinkMode mode = SinkMode::kStatic;
  std::uint64_t seed = 0;
  std::optional<MetricsReport> report;  // none if the cell failed
  std::string error;
};

/// Called once per finished cell; invocations are serialized.
using TraceVisitor = std::function<void(const MatrixRow&, const SimulationTrace&)>;

/// Runs every (size, mode, seed) cell with density-preserving scaling.
/// Rows come back in (size, mode, seed) input order regardless of
/// `threads`. A failing cell is reported in its row and does not abort the
/// others.
inline std::vector<MatrixRow> run_experiment_matrix(const ScenarioConfig& base,
                                                    std::span<const std::size_t> sizes,
                                                    std::span<const std::uint64_t> seeds,
                                                    unsigned threads = 1,
                                                    const TraceVisitor& visit = {}) {
  if (sizes.empty()) throw ConfigError("sizes must be nonempty");
  if (seeds.empty()) throw ConfigError("seeds must be nonempty");

  std::vector<MatrixRow> rows;
  for (std::size_t size : sizes)
    for (SinkMode mode : {SinkMode::kStatic, SinkMode::kMobile})
      for (std::uint64_t seed : seeds) rows.push_back({size, mode, seed, std::nullopt, {}});

  std::mutex mu;
  std::size_t next = 0;
  auto worker = [&] {
    for (;;) {
      std::size_t i;
      {
        std::lock_guard lock(mu);
        if (next == rows.size()) return;
        i = next++;
      }
      auto& row = rows[i];
      ScenarioConfig cfg = base;
      cfg.n = row.size;
      cfg.mode = row.mode;
      cfg.seed = row.seed;
      try {
        auto trace = run_scenario(cfg);
        row.report = compute_metrics(trace);
        if (visit) {
          std::lock_guard lock(mu);
          visit(row, trace);
        }
      } catch (const std::exception& e) {
        row.error = e.what();
      }
    }
  };

  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(rows.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return rows;
}

/// Per-(size, mode) means over the seeds where each metric is available.
struct CellSummary {
  std::size_t size = 0;
  SinkMode mode = SinkMode::kStatic;
  std::size_t runs = 0;
  std::optional<double> avg_energy_per_packet;
  std::optional<double> rounds_to_neighbor_death;
  std::optional<double> rounds_to_first_death;
  std::optional<double> avg_hop_count;
  std::size_t neighbor_death_reached = 0;
  std::size_t first_death_reached = 0;
};

inline std::vector<CellSummary> summarize(std::span<const MatrixRow> rows) {
  struct Acc {
    std::size_t runs = 0;
    double e = 0, nd = 0, fd = 0, h = 0;
    std::size_t ne = 0, nnd = 0, nfd = 0, nh = 0;
  };
  std::map<std::pair<std::size_t, int>, Acc> acc;
  for (const auto& r : rows) {
    auto& a = acc[{r.size, static_cast<int>(r.mode)}];
    if (!r.report) continue;
    ++a.runs;
    const auto& m = *r.report;
    if (m.avg_energy_per_packet) a.e += *m.avg_energy_per_packet, ++a.ne;
    if (m.rounds_to_neighbor_death) a.nd += static_cast<double>(*m.rounds_to_neighbor_death), ++a.nnd;
    if (m.rounds_to_first_death) a.fd += static_cast<double>(*m.rounds_to_first_death), ++a.nfd;
    if (m.avg_hop_count) a.h += *m.avg_hop_count, ++a.nh;
  }
  auto mean = [](double s, std::size_t n) -> std::optional<double> {
    if (n == 0) return std::nullopt;
    return s / static_cast<double>(n);
  };
  std::vector<CellSummary> out;
  for (const auto& [key, a] : acc) {
    CellSummary c;
    c.size = key.first;
    c.mode = static_cast<SinkMode>(key.second);
    c.runs = a.runs;
    c.avg_energy_per_packet = mean(a.e, a.ne);
    c.rounds_to_neighbor_death = mean(a.nd, a.nnd);
    c.rounds_to_first_death = mean(a.fd, a.nfd);
    c.avg_hop_count = mean(a.h, a.nh);
    c.neighbor_death_reached = a.nnd;
    c.first_death_reached = a.nfd;
    out.push_back(c);
  }
  return out;
}

inline const CellSummary* find_cell(std::span<const CellSummary> cells, std::size_t size,
                                    SinkMode mode) {
  for (const auto& c : cells)
    if (c.size == size && c.mode == mode) return &c;
  return nullptr;
}

/// Header plus one line per row sorted by (size, mode name, seed). Missing
/// values are empty cells.
inline std::string emit_csv(std::span<const MatrixRow> rows) {
  std::vector<const MatrixRow*> sorted;
  for (const auto& r : rows) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(), [](const MatrixRow* a, const MatrixRow* b) {
    return std::make_tuple(a->size, std::string(to_string(a->mode)), a->seed) <
           std::make_tuple(b->size, std::string(to_string(b->mode)), b->seed);
  });

  std::string out = "size,mode,seed,avg_energy_j,neighbor_death_round,first_death_round,avg_hops,packets\n";
  auto opt_d = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  auto opt_u = [](const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : std::string(); };
  for (const auto* r : sorted) {
    out += std::to_string(r->size) + ',' + to_string(r->mode) + ',' + std::to_string(r->seed) + ',';
    if (r->report) {
      const auto& m = *r->report;
      out += opt_d(m.avg_energy_per_packet) + ',' + opt_u(m.rounds_to_neighbor_death) + ',' +
             opt_u(m.rounds_to_first_death) + ',' + opt_d(m.avg_hop_count) + ',' +
             std::to_string(m.packets_delivered);
    } else {
      out += ",,,,";
    }
    out += '\n';
  }
  return out;
}

inline constexpr std::array<std::size_t, 6> kDefaultSizes = {50, 100, 150, 200, 250, 300};

}  // namespace simoco
