// Copyright (c) evograph contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "core/composed_view.hpp"
#include "core/programs.hpp"
#include "core/store.hpp"
#include "core/trigrid.hpp"

namespace evograph {

struct EngineConfig {
  // Batches at or above the threshold drain synchronously (updates visible
  // next round), smaller ones asynchronously (updates visible immediately).
  std::uint64_t mode_threshold = 10000;
  int force_mode = -1;  // -1 auto, 0 synchronous, 1 asynchronous
  // Edge-function application budget per drain; 0 derives a generous bound
  // from the graph size. Exceeding it raises NonConvergence.
  std::uint64_t max_edge_applications = 0;
  int threads = 1;  // parallelism across sibling schedule subtrees
};

struct DrainStats {
  std::uint64_t edge_applications = 0;
  std::uint64_t improvements = 0;
  std::uint64_t rounds = 0;

  void accumulate(const DrainStats& other) {
    edge_applications += other.edge_applications;
    improvements += other.improvements;
    rounds += other.rounds;
  }
};

struct VertexValues {
  std::vector<double> values;
  // In-neighbor whose relaxation produced the current value; maintained only
  // by the baseline streaming engine (-1 when unset).
  std::vector<std::int32_t> dependence_parent;
};

// Fixed point of the program on the view, from identity initial values.
VertexValues evaluate_full(const ComposedGraphView& view, const VertexProgram& prog,
                           VertexId source, const EngineConfig& config = {},
                           DrainStats* stats = nullptr);

// Addition-only incremental update: `values` must be a fixed point on `view`;
// afterwards it is the fixed point on compose(view, batch). Raises Overlap if
// the batch intersects the view.
void incremental_add(VertexValues& values, const ComposedGraphView& view,
                     const CsrGraph& batch, const VertexProgram& prog,
                     const EngineConfig& config = {}, DrainStats* stats = nullptr);

struct BreakdownRow {
  int snapshot = 0;
  double mutation_ms = 0.0;
  double incr_add_ms = 0.0;
  double incr_del_ms = 0.0;
  double initial_ms = 0.0;
  std::uint64_t edge_fn_applications = 0;
  // Split of the total for deletion-vs-addition accounting.
  std::uint64_t add_edge_fn = 0;
  std::uint64_t del_edge_fn = 0;
  std::uint64_t taint_size = 0;
};

struct RunResult {
  std::vector<int> snapshots;         // ascending
  std::vector<VertexValues> values;   // parallel to snapshots
  std::vector<BreakdownRow> rows;     // parallel to snapshots
  // For composed-representation engines: whether the common graph and every
  // overlay hashed identically before and after execution.
  bool mutation_free_verified = false;
  std::uint64_t checksum_before = 0;
  std::uint64_t checksum_after = 0;

  const VertexValues& values_for(int snapshot) const;
};

// Executes a materialized schedule: full evaluation at the root common graph,
// then one incremental addition per edge, cloning values at branches. Sibling
// subtrees run concurrently when config.threads > 1. Never mutates any CSR.
RunResult run_schedule(const EvolvingGraphStore& store,
                       const EvaluationSchedule& schedule, const VertexProgram& prog,
                       VertexId source, const EngineConfig& config = {});

}  // namespace evograph
