// Copyright (c) evograph contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "core/edge_set.hpp"
#include "core/engine.hpp"
#include "core/errors.hpp"
#include "core/programs.hpp"

namespace evograph::detail {

// Push-based worklist drain shared by the composed-view engine and the
// mutable-adjacency baseline. Graph only needs for_each_out(v, fn(dst, w)).
//
// Asynchronous mode: single value array, FIFO worklist, updates visible
// immediately. Synchronous mode: candidates for a round are computed from the
// values at the start of the round and take effect when the round ends.
// Both reach the same fixed point under compare-and-improve updates.
//
// OnImprove(dst, src) runs after every accepted update (dependence tracking).
template <class Graph, class OnImprove>
void drain_to_fixed_point(const Graph& graph, const VertexProgram& prog,
                          std::vector<double>& vals, std::vector<VertexId> frontier,
                          bool synchronous, std::uint64_t max_apps,
                          DrainStats& stats, OnImprove&& on_improve) {
  const std::size_t n = vals.size();
  std::vector<std::uint8_t> queued(n, 0);

  auto apply_budget = [&]() {
    if (++stats.edge_applications > max_apps) {
      raise(ErrorCode::NonConvergence,
            "edge-function application budget exceeded (" +
                std::to_string(max_apps) + ")");
    }
  };

  if (!synchronous) {
    for (VertexId v : frontier) queued[v] = 1;
    std::size_t head = 0;
    while (head < frontier.size()) {
      const VertexId u = frontier[head++];
      queued[u] = 0;
      graph.for_each_out(u, [&](VertexId dst, double w) {
        apply_budget();
        const double cand = prog.edge_function(vals[u], w);
        if (prog.improves(cand, vals[dst])) {
          vals[dst] = cand;
          ++stats.improvements;
          on_improve(dst, u);
          if (!queued[dst]) {
            queued[dst] = 1;
            frontier.push_back(dst);
          }
        }
      });
      // Keep the queue compact on long drains.
      if (head > 1024 && head * 2 > frontier.size()) {
        frontier.erase(frontier.begin(), frontier.begin() + static_cast<std::ptrdiff_t>(head));
        head = 0;
      }
    }
    ++stats.rounds;
    return;
  }

  // `next` mirrors `vals` between rounds; inside a round it accumulates the
  // best candidate per vertex while `vals` still holds the previous round.
  std::vector<double> next = vals;
  std::vector<VertexId> activated;
  while (!frontier.empty()) {
    ++stats.rounds;
    activated.clear();
    for (VertexId u : frontier) {
      graph.for_each_out(u, [&](VertexId dst, double w) {
        apply_budget();
        const double cand = prog.edge_function(vals[u], w);
        if (prog.improves(cand, next[dst])) {
          next[dst] = cand;
          ++stats.improvements;
          on_improve(dst, u);
          if (!queued[dst]) {
            queued[dst] = 1;
            activated.push_back(dst);
          }
        }
      });
    }
    for (VertexId v : activated) {
      vals[v] = next[v];
      queued[v] = 0;
    }
    frontier.swap(activated);
  }
}

inline bool choose_synchronous(const EngineConfig& config, std::uint64_t batch_size) {
  if (config.force_mode == 0) return true;
  if (config.force_mode == 1) return false;
  return batch_size >= config.mode_threshold;
}

inline std::uint64_t application_budget(const EngineConfig& config,
                                        std::uint64_t vertex_count,
                                        std::uint64_t edge_count) {
  if (config.max_edge_applications != 0) return config.max_edge_applications;
  const std::uint64_t derived = 200 * (vertex_count + edge_count + 1);
  return derived < 1000000 ? 1000000 : derived;
}

}  // namespace evograph::detail
