// Copyright (c) evograph contributors.
// SPDX-License-Identifier: Apache-2.0
#include "core/engine.hpp"

#include <atomic>
#include <chrono>
#include <future>
#include <string>
#include <utility>

#include "core/drain.hpp"
#include "core/errors.hpp"

namespace evograph {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void check_viterbi_weights_view(const ComposedGraphView& view, const VertexProgram& prog) {
  if (!prog.requires_unit_weights) return;
  view.for_each_edge([&](VertexId src, VertexId dst, double w) {
    if (w < 1.0) {
      raise(ErrorCode::InvalidArgument,
            "viterbi requires edge weights >= 1, got weight on edge (" +
                std::to_string(src) + ", " + std::to_string(dst) + ")");
    }
  });
}

void check_viterbi_weights_csr(const CsrGraph& g, const VertexProgram& prog) {
  if (!prog.requires_unit_weights) return;
  g.for_each_edge([&](VertexId src, VertexId dst, double w) {
    if (w < 1.0) {
      raise(ErrorCode::InvalidArgument,
            "viterbi requires edge weights >= 1, got weight on edge (" +
                std::to_string(src) + ", " + std::to_string(dst) + ")");
    }
  });
}

constexpr auto kNoDependence = [](VertexId, VertexId) {};

}  // namespace

VertexValues evaluate_full(const ComposedGraphView& view, const VertexProgram& prog,
                           VertexId source, const EngineConfig& config,
                           DrainStats* stats) {
  const std::uint32_t n = view.vertex_count();
  if (source >= n) {
    raise(ErrorCode::VertexOutOfRange,
          "source " + std::to_string(source) + " outside vertex range [0, " +
              std::to_string(n) + ")");
  }
  check_viterbi_weights_view(view, prog);

  VertexValues out;
  out.values.assign(n, prog.identity_value);
  out.values[source] = prog.source_value;

  DrainStats local;
  const bool sync = detail::choose_synchronous(config, 1);
  const std::uint64_t budget = detail::application_budget(config, n, view.edge_count());
  detail::drain_to_fixed_point(view, prog, out.values, {source}, sync, budget, local,
                               kNoDependence);
  if (stats) stats->accumulate(local);
  return out;
}

void incremental_add(VertexValues& values, const ComposedGraphView& view,
                     const CsrGraph& batch, const VertexProgram& prog,
                     const EngineConfig& config, DrainStats* stats) {
  const ComposedGraphView composed = view.extended(batch);
  check_viterbi_weights_csr(batch, prog);

  DrainStats local;
  std::vector<VertexId> frontier;
  std::vector<std::uint8_t> queued(values.values.size(), 0);
  // Phase 1: apply the edge function across the batch and schedule improved
  // destinations.
  batch.for_each_edge([&](VertexId src, VertexId dst, double w) {
    ++local.edge_applications;
    const double cand = prog.edge_function(values.values[src], w);
    if (prog.improves(cand, values.values[dst])) {
      values.values[dst] = cand;
      ++local.improvements;
      if (!queued[dst]) {
        queued[dst] = 1;
        frontier.push_back(dst);
      }
    }
  });
  // Phase 2: drain over the composed adjacency.
  const bool sync = detail::choose_synchronous(config, batch.edge_count());
  const std::uint64_t budget =
      detail::application_budget(config, composed.vertex_count(), composed.edge_count());
  detail::drain_to_fixed_point(composed, prog, values.values, std::move(frontier), sync,
                               budget, local, kNoDependence);
  if (stats) stats->accumulate(local);
}

// ---------------------------------------------------------------------------
// Schedule execution
// ---------------------------------------------------------------------------

namespace {

struct ExecNode {
  const ScheduleNode* node = nullptr;
  CsrGraph overlay;  // the node's incoming batch in CSR form
  int leftmost_leaf = 0;
  std::vector<ExecNode> children;
};

ExecNode build_exec_tree(const ScheduleNode& node, std::uint32_t vertex_count,
                         bool is_root) {
  ExecNode exec;
  exec.node = &node;
  if (!is_root) {
    if (!node.batch.has_value()) {
      raise(ErrorCode::InvalidArgument, "schedule is not materialized");
    }
    exec.overlay = CsrGraph::from_edge_set(*node.batch, vertex_count);
  }
  exec.leftmost_leaf = node.interval.lo;
  for (const auto& child : node.children) {
    exec.children.push_back(build_exec_tree(child, vertex_count, false));
  }
  return exec;
}

std::uint64_t combined_checksum(const CsrGraph& root, const ExecNode& node) {
  std::uint64_t h = root.checksum();
  auto visit = [&](auto&& self, const ExecNode& n) -> void {
    h = h * 0x9e3779b97f4a7c15ULL + n.overlay.checksum();
    for (const auto& c : n.children) self(self, c);
  };
  visit(visit, node);
  return h;
}

struct ScheduleExecutor {
  const VertexProgram& prog;
  const EngineConfig& config;
  Interval window;
  std::vector<BreakdownRow>* rows;
  std::vector<VertexValues>* results;
  std::atomic<int> thread_budget{0};

  BreakdownRow& row_for(int snapshot) {
    return (*rows)[static_cast<std::size_t>(snapshot - window.lo)];
  }

  void execute(const ExecNode& exec, const ComposedGraphView& view,
               const VertexValues& vals) {
    const bool is_leaf_interval = exec.node->interval.lo == exec.node->interval.hi;
    if (is_leaf_interval) {
      (*results)[static_cast<std::size_t>(exec.node->interval.lo - window.lo)] = vals;
    }
    if (exec.children.empty()) return;

    auto run_child = [&](const ExecNode& child) {
      const auto t0 = Clock::now();
      DrainStats stats;
      VertexValues child_vals = vals;
      const ComposedGraphView child_view = view.extended(child.overlay);
      // Phase 1 + drain; the view already contains the overlay, so run the
      // phases directly against it.
      std::vector<VertexId> frontier;
      std::vector<std::uint8_t> queued(child_vals.values.size(), 0);
      child.overlay.for_each_edge([&](VertexId src, VertexId dst, double w) {
        ++stats.edge_applications;
        const double cand = prog.edge_function(child_vals.values[src], w);
        if (prog.improves(cand, child_vals.values[dst])) {
          child_vals.values[dst] = cand;
          ++stats.improvements;
          if (!queued[dst]) {
            queued[dst] = 1;
            frontier.push_back(dst);
          }
        }
      });
      const bool sync = detail::choose_synchronous(config, child.overlay.edge_count());
      const std::uint64_t budget = detail::application_budget(
          config, child_view.vertex_count(), child_view.edge_count());
      detail::drain_to_fixed_point(child_view, prog, child_vals.values,
                                   std::move(frontier), sync, budget, stats,
                                   kNoDependence);

      BreakdownRow& row = row_for(child.leftmost_leaf);
      row.incr_add_ms += ms_since(t0);
      row.edge_fn_applications += stats.edge_applications;
      row.add_edge_fn += stats.edge_applications;
      execute(child, child_view, child_vals);
    };

    // Sibling subtrees are independent: each works on its own cloned values
    // and only reads the shared immutable CSRs.
    if (exec.children.size() > 1 && thread_budget.load() > 0) {
      std::vector<std::future<void>> tasks;
      for (std::size_t i = 0; i + 1 < exec.children.size(); ++i) {
        int budget = thread_budget.load();
        if (budget > 0 && thread_budget.compare_exchange_strong(budget, budget - 1)) {
          tasks.push_back(std::async(std::launch::async, run_child,
                                     std::cref(exec.children[i])));
        } else {
          run_child(exec.children[i]);
        }
      }
      run_child(exec.children.back());
      for (auto& t : tasks) t.get();
      thread_budget.fetch_add(static_cast<int>(tasks.size()));
    } else {
      for (const auto& child : exec.children) run_child(child);
    }
  }
};

}  // namespace

const VertexValues& RunResult::values_for(int snapshot) const {
  for (std::size_t i = 0; i < snapshots.size(); ++i) {
    if (snapshots[i] == snapshot) return values[i];
  }
  raise(ErrorCode::UnknownSnapshot,
        "no result for snapshot " + std::to_string(snapshot));
}

RunResult run_schedule(const EvolvingGraphStore& store,
                       const EvaluationSchedule& schedule, const VertexProgram& prog,
                       VertexId source, const EngineConfig& config) {
  const EvaluationSchedule* sched = &schedule;
  EvaluationSchedule materialized_local;
  if (!schedule.materialized) {
    materialized_local = materialize_batches(store, schedule);
    sched = &materialized_local;
  }

  const Interval window = sched->window;
  const int m = window.length();
  const std::uint32_t n = store.vertex_count();

  RunResult result;
  result.snapshots.resize(static_cast<std::size_t>(m));
  result.values.resize(static_cast<std::size_t>(m));
  result.rows.assign(static_cast<std::size_t>(m), BreakdownRow{});
  for (int t = 0; t < m; ++t) {
    result.snapshots[static_cast<std::size_t>(t)] = window.lo + t;
    result.rows[static_cast<std::size_t>(t)].snapshot = window.lo + t;
  }

  const CsrGraph root_csr = CsrGraph::from_edge_set(store.common_edges(window), n);
  ExecNode exec = build_exec_tree(sched->root, n, true);
  result.checksum_before = combined_checksum(root_csr, exec);

  const auto t0 = Clock::now();
  DrainStats initial_stats;
  const ComposedGraphView root_view = ComposedGraphView::compose(root_csr, {});
  VertexValues root_vals = evaluate_full(root_view, prog, source, config, &initial_stats);
  {
    BreakdownRow& row = result.rows.front();
    row.initial_ms = ms_since(t0);
    row.edge_fn_applications += initial_stats.edge_applications;
    row.add_edge_fn += initial_stats.edge_applications;
  }

  ScheduleExecutor executor{prog, config, window, &result.rows, &result.values};
  executor.thread_budget = config.threads > 1 ? config.threads - 1 : 0;
  executor.execute(exec, root_view, root_vals);

  result.checksum_after = combined_checksum(root_csr, exec);
  result.mutation_free_verified = result.checksum_before == result.checksum_after;
  return result;
}

}  // namespace evograph
