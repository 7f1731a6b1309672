// Copyright (c) evograph contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/store.hpp"

namespace evograph {

/// The interval lattice over a snapshot window: one node per contiguous
/// sub-interval [i, j], with two weighted out-edges per non-leaf node — to
/// [i, j-1] (left) and [i+1, j] (right). Edge weights are the sizes of the
/// addition-only labels between the nested common graphs.
class TriangularGrid {
public:
  static TriangularGrid build(const EvolvingGraphStore& store, Interval window);

  // Test constructor with explicit weights (left/right flattened as i*m+j in
  // window-relative coordinates); weights need not come from any store.
  static TriangularGrid from_weights(Interval window,
                                     std::vector<std::int64_t> weight_left,
                                     std::vector<std::int64_t> weight_right);

  Interval window() const { return window_; }
  int length() const { return m_; }

  std::int64_t node_count() const {
    return static_cast<std::int64_t>(m_) * (m_ + 1) / 2;
  }
  int intermediate_level_count() const { return m_ >= 2 ? m_ - 2 : 0; }

  // Weights for the out-edges of node [iv.lo, iv.hi] (absolute snapshots).
  std::int64_t weight_left(Interval node) const;   // to [lo, hi-1]
  std::int64_t weight_right(Interval node) const;  // to [lo+1, hi]

private:
  std::size_t index(Interval node) const;

  Interval window_{};
  int m_ = 0;
  std::vector<std::int64_t> weight_left_;
  std::vector<std::int64_t> weight_right_;
};

/// One node of a query evaluation schedule. `batch_size` is the number of
/// edges added on arrival from the parent (zero at the root); the edges
/// themselves equal common_edges(interval) \ common_edges(parent interval)
/// and are filled in by materialize_batches.
struct ScheduleNode {
  Interval interval{};
  std::int64_t batch_size = 0;
  std::optional<EdgeSet> batch;
  std::vector<ScheduleNode> children;
};

enum class ScheduleKind { DirectHop, WorkSharing };

struct EvaluationSchedule {
  ScheduleKind kind = ScheduleKind::WorkSharing;
  Interval window{};
  ScheduleNode root;
  std::int64_t total_cost = 0;
  bool materialized = false;
};

// Minimum-cost tree rooted at the window covering every snapshot leaf.
// Exact dynamic program over (node interval, covered leaf range) states;
// equal-cost ties resolve deterministically (left descent first, then right,
// then branches by ascending split).
EvaluationSchedule solve_steiner(const TriangularGrid& tg);

// Contracts every internal non-root chain node with exactly one child,
// unioning its batch into the surviving edge. Cost and leaf set unchanged.
EvaluationSchedule bypass_merge(EvaluationSchedule schedule);

// One-level schedule: every snapshot hangs directly off the window's common
// graph with batch G_t \ CG(window).
EvaluationSchedule direct_hop_schedule(const EvolvingGraphStore& store, Interval window);

// Fills every node's batch edge set (only batches on schedule edges exist).
EvaluationSchedule materialize_batches(const EvolvingGraphStore& store,
                                       EvaluationSchedule schedule);

const char* schedule_kind_name(ScheduleKind kind);

// Stable text form: header lines (format tag, mode, window, cost, nodes) then
// one pre-order `node` line per node, each optionally followed by its batch's
// `edge` lines. `#` lines are comments.
std::string schedule_to_text(const EvaluationSchedule& schedule, bool include_edges);

struct ParsedScheduleNode {
  Interval interval{};
  int parent = -1;
  std::int64_t batch_size = 0;
  std::vector<Edge> edges;
};

struct ParsedSchedule {
  std::string mode;
  Interval window{};
  std::int64_t cost = 0;
  std::vector<ParsedScheduleNode> nodes;
};

ParsedSchedule schedule_from_text(const std::string& text);

}  // namespace evograph
