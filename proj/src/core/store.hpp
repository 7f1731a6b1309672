// Copyright (c) evograph contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <utility>
#include <vector>

#include "core/edge_set.hpp"

namespace evograph {

struct Interval {
  int lo = 0;
  int hi = 0;

  int length() const { return hi - lo + 1; }
  bool contains(const Interval& other) const {
    return lo <= other.lo && other.hi <= hi;
  }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct DeltaBatch {
  EdgeSet additions;
  EdgeSet deletions;  // matched by (src, dst); weights are ignored
};

/// Versioned storage of an evolving graph: the base snapshot plus ordered
/// transition batches. Membership over snapshot intervals is answered from
/// per-edge presence runs — the maximal contiguous snapshot ranges in which
/// an edge is present — so intermediate common graphs are never stored.
class EvolvingGraphStore {
public:
  EvolvingGraphStore(EdgeSet base, std::uint32_t vertex_count);

  std::uint32_t vertex_count() const { return vertex_count_; }
  int snapshot_count() const { return snapshot_count_; }

  // Appends one transition; returns the new snapshot id. Raises
  // DeleteMissingEdge / AddExistingEdge naming the offending (src, dst).
  int new_version(const DeltaBatch& batch);

  EdgeSet get_version(int t) const;

  // additions = G_b \ G_a, deletions = G_a \ G_b.
  DeltaBatch diff(int a, int b) const;

  // Intersection of all snapshots in the interval.
  EdgeSet common_edges(Interval iv) const;

  // common_edges(inner) \ common_edges(outer) for nested intervals; always
  // addition-only since shrinking an interval can only grow the intersection.
  EdgeSet cover_difference(Interval outer, Interval inner) const;

  // cover_difference restricted to adjacent levels: child must be the parent
  // shrunk by one snapshot on either end; raises NotAdjacent otherwise.
  EdgeSet delta_label(Interval parent, Interval child) const;

  std::int64_t common_count(Interval iv) const;

  // c(i, j) = |common_edges([window.lo+i, window.lo+j])| for all i <= j,
  // flattened as i * m + j. Computed in one pass over presence runs.
  std::vector<std::int64_t> common_counts(Interval window) const;

  const DeltaBatch& transition(int idx) const;
  const EdgeSet& base_edges() const { return base_edges_; }

  void save(const std::filesystem::path& dir) const;
  static EvolvingGraphStore load(const std::filesystem::path& dir);

  // Edge-list text ingestion: `src dst [weight]` per line, `#` comments,
  // weight defaults to 1.0, V = max vertex id + 1.
  static EvolvingGraphStore ingest_edge_list(const std::filesystem::path& file);

  void check_interval(Interval iv) const;
  void check_snapshot(int t) const;

private:
  struct Run {
    int start = 0;
    int end = kOpen;  // inclusive; kOpen while the edge is still present
    double weight = 1.0;
  };
  static constexpr int kOpen = -1;

  using EdgeKey = std::pair<VertexId, VertexId>;

  int run_end(const Run& r) const {
    return r.end == kOpen ? snapshot_count_ - 1 : r.end;
  }
  bool covers(const std::vector<Run>& runs, Interval iv, double* weight_out) const;
  bool present_at(const std::vector<Run>& runs, int t, double* weight_out) const;

  std::uint32_t vertex_count_ = 0;
  int snapshot_count_ = 0;
  EdgeSet base_edges_;
  std::vector<DeltaBatch> transitions_;
  std::map<EdgeKey, std::vector<Run>> runs_;
};

}  // namespace evograph
