// Copyright (c) evograph contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "core/engine.hpp"
#include "core/programs.hpp"
#include "core/store.hpp"

namespace evograph {

/// Deletion-capable streaming engine used as the comparison baseline. It
/// owns a mutable adjacency that it edits in place per transition, and a
/// dependence-parent array per vertex. Deletions invalidate values by
/// dependence trimming: vertices whose value chain passes through a deleted
/// edge are reset to identity and re-relaxed from their in-neighbors before
/// the regular drain; additions use the standard incremental path.
class BaselineStreamEngine {
public:
  BaselineStreamEngine(std::uint32_t vertex_count, const VertexProgram& prog,
                       VertexId source, const EngineConfig& config);

  // Builds the adjacency for the starting snapshot and computes the initial
  // fixed point with dependence tracking.
  void initialize(const EdgeSet& snapshot, BreakdownRow* row);

  // Applies one transition (deletions first, then additions) and restores
  // the fixed point. Fills timing and work accounting into `row`.
  void step(const DeltaBatch& batch, BreakdownRow* row);

  const VertexValues& values() const { return values_; }

private:
  struct Adjacency {
    // Sorted by neighbor id; mutated in place as the graph evolves.
    std::vector<std::vector<std::pair<VertexId, double>>> out;
    std::vector<std::vector<std::pair<VertexId, double>>> in;
  };

  struct OutGraph {
    const Adjacency* adj;
    template <class Fn>
    void for_each_out(VertexId v, Fn&& fn) const {
      for (const auto& [dst, w] : adj->out[v]) fn(dst, w);
    }
  };

  std::uint64_t budget() const;
  std::uint64_t edge_count_ = 0;

  std::uint32_t vertex_count_;
  const VertexProgram& prog_;
  VertexId source_;
  EngineConfig config_;
  Adjacency adj_;
  VertexValues values_;
};

// Walks the window snapshot by snapshot with the baseline engine.
RunResult run_baseline(const EvolvingGraphStore& store, Interval window,
                       const VertexProgram& prog, VertexId source,
                       const EngineConfig& config = {});

}  // namespace evograph
