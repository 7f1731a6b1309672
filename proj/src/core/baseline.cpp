// Copyright (c) evograph contributors.
// SPDX-License-Identifier: Apache-2.0
#include "core/baseline.hpp"

#include <algorithm>
#include <chrono>
#include <string>

#include "core/drain.hpp"
#include "core/errors.hpp"

namespace evograph {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void sorted_insert(std::vector<std::pair<VertexId, double>>& list, VertexId id,
                   double weight) {
  auto it = std::lower_bound(list.begin(), list.end(), id,
                             [](const auto& entry, VertexId v) { return entry.first < v; });
  list.insert(it, {id, weight});
}

bool sorted_erase(std::vector<std::pair<VertexId, double>>& list, VertexId id) {
  auto it = std::lower_bound(list.begin(), list.end(), id,
                             [](const auto& entry, VertexId v) { return entry.first < v; });
  if (it == list.end() || it->first != id) return false;
  list.erase(it);
  return true;
}

}  // namespace

BaselineStreamEngine::BaselineStreamEngine(std::uint32_t vertex_count,
                                           const VertexProgram& prog, VertexId source,
                                           const EngineConfig& config)
    : vertex_count_(vertex_count), prog_(prog), source_(source), config_(config) {
  if (source >= vertex_count) {
    raise(ErrorCode::VertexOutOfRange,
          "source " + std::to_string(source) + " outside vertex range [0, " +
              std::to_string(vertex_count) + ")");
  }
  adj_.out.resize(vertex_count);
  adj_.in.resize(vertex_count);
}

std::uint64_t BaselineStreamEngine::budget() const {
  return detail::application_budget(config_, vertex_count_, edge_count_);
}

void BaselineStreamEngine::initialize(const EdgeSet& snapshot, BreakdownRow* row) {
  const auto t_mut = Clock::now();
  for (auto& list : adj_.out) list.clear();
  for (auto& list : adj_.in) list.clear();
  for (const Edge& e : snapshot) {
    if (prog_.requires_unit_weights && e.weight < 1.0) {
      raise(ErrorCode::InvalidArgument, "viterbi requires edge weights >= 1");
    }
    sorted_insert(adj_.out[e.src], e.dst, e.weight);
    sorted_insert(adj_.in[e.dst], e.src, e.weight);
  }
  edge_count_ = snapshot.size();
  if (row) row->mutation_ms += ms_since(t_mut);

  const auto t_init = Clock::now();
  values_.values.assign(vertex_count_, prog_.identity_value);
  values_.dependence_parent.assign(vertex_count_, -1);
  values_.values[source_] = prog_.source_value;

  DrainStats stats;
  auto track = [&](VertexId dst, VertexId src) {
    values_.dependence_parent[dst] = static_cast<std::int32_t>(src);
  };
  detail::drain_to_fixed_point(OutGraph{&adj_}, prog_, values_.values, {source_},
                               detail::choose_synchronous(config_, 1), budget(), stats,
                               track);
  if (row) {
    row->initial_ms += ms_since(t_init);
    row->edge_fn_applications += stats.edge_applications;
    row->add_edge_fn += stats.edge_applications;
  }
}

void BaselineStreamEngine::step(const DeltaBatch& batch, BreakdownRow* row) {
  auto track = [&](VertexId dst, VertexId src) {
    values_.dependence_parent[dst] = static_cast<std::int32_t>(src);
  };

  // Deletions: mutate the adjacency.
  const auto t_mut_del = Clock::now();
  for (const Edge& e : batch.deletions) {
    if (!sorted_erase(adj_.out[e.src], e.dst)) {
      raise(ErrorCode::DeleteMissingEdge,
            "cannot delete absent edge (" + std::to_string(e.src) + ", " +
                std::to_string(e.dst) + ")");
    }
    sorted_erase(adj_.in[e.dst], e.src);
    --edge_count_;
  }
  if (row) row->mutation_ms += ms_since(t_mut_del);

  // Deletions: dependence trimming and re-relaxation.
  const auto t_del = Clock::now();
  DrainStats del_stats;
  std::uint64_t taint_size = 0;
  {
    std::vector<VertexId> tainted;
    std::vector<std::uint8_t> is_tainted(vertex_count_, 0);
    for (const Edge& e : batch.deletions) {
      if (values_.dependence_parent[e.dst] == static_cast<std::int32_t>(e.src) &&
          !is_tainted[e.dst]) {
        is_tainted[e.dst] = 1;
        tainted.push_back(e.dst);
      }
    }
    if (!tainted.empty()) {
      // Propagate taint through the dependence children.
      std::vector<std::vector<VertexId>> children(vertex_count_);
      for (VertexId v = 0; v < vertex_count_; ++v) {
        const std::int32_t p = values_.dependence_parent[v];
        if (p >= 0) children[static_cast<VertexId>(p)].push_back(v);
      }
      for (std::size_t head = 0; head < tainted.size(); ++head) {
        for (VertexId child : children[tainted[head]]) {
          if (!is_tainted[child]) {
            is_tainted[child] = 1;
            tainted.push_back(child);
          }
        }
      }
      taint_size = tainted.size();
      for (VertexId v : tainted) {
        values_.values[v] = prog_.identity_value;
        values_.dependence_parent[v] = -1;
      }
      // Re-relax tainted vertices from their in-neighbors, then drain.
      std::vector<VertexId> frontier;
      std::vector<std::uint8_t> queued(vertex_count_, 0);
      for (VertexId v : tainted) {
        for (const auto& [src, w] : adj_.in[v]) {
          ++del_stats.edge_applications;
          const double cand = prog_.edge_function(values_.values[src], w);
          if (prog_.improves(cand, values_.values[v])) {
            values_.values[v] = cand;
            ++del_stats.improvements;
            values_.dependence_parent[v] = static_cast<std::int32_t>(src);
            if (!queued[v]) {
              queued[v] = 1;
              frontier.push_back(v);
            }
          }
        }
      }
      detail::drain_to_fixed_point(
          OutGraph{&adj_}, prog_, values_.values, std::move(frontier),
          detail::choose_synchronous(config_, batch.deletions.size()), budget(),
          del_stats, track);
    }
  }
  if (row) {
    row->incr_del_ms += ms_since(t_del);
    row->edge_fn_applications += del_stats.edge_applications;
    row->del_edge_fn += del_stats.edge_applications;
    row->taint_size += taint_size;
  }

  // Additions: mutate the adjacency.
  const auto t_mut_add = Clock::now();
  for (const Edge& e : batch.additions) {
    if (prog_.requires_unit_weights && e.weight < 1.0) {
      raise(ErrorCode::InvalidArgument, "viterbi requires edge weights >= 1");
    }
    if (adj_.out[e.src].end() !=
        std::find_if(adj_.out[e.src].begin(), adj_.out[e.src].end(),
                     [&](const auto& entry) { return entry.first == e.dst; })) {
      raise(ErrorCode::AddExistingEdge,
            "cannot add already-present edge (" + std::to_string(e.src) + ", " +
                std::to_string(e.dst) + ")");
    }
    sorted_insert(adj_.out[e.src], e.dst, e.weight);
    sorted_insert(adj_.in[e.dst], e.src, e.weight);
    ++edge_count_;
  }
  if (row) row->mutation_ms += ms_since(t_mut_add);

  // Additions: incremental update.
  const auto t_add = Clock::now();
  DrainStats add_stats;
  {
    std::vector<VertexId> frontier;
    std::vector<std::uint8_t> queued(vertex_count_, 0);
    for (const Edge& e : batch.additions) {
      ++add_stats.edge_applications;
      const double cand = prog_.edge_function(values_.values[e.src], e.weight);
      if (prog_.improves(cand, values_.values[e.dst])) {
        values_.values[e.dst] = cand;
        ++add_stats.improvements;
        values_.dependence_parent[e.dst] = static_cast<std::int32_t>(e.src);
        if (!queued[e.dst]) {
          queued[e.dst] = 1;
          frontier.push_back(e.dst);
        }
      }
    }
    detail::drain_to_fixed_point(
        OutGraph{&adj_}, prog_, values_.values, std::move(frontier),
        detail::choose_synchronous(config_, batch.additions.size()), budget(),
        add_stats, track);
  }
  if (row) {
    row->incr_add_ms += ms_since(t_add);
    row->edge_fn_applications += add_stats.edge_applications;
    row->add_edge_fn += add_stats.edge_applications;
  }
}

RunResult run_baseline(const EvolvingGraphStore& store, Interval window,
                       const VertexProgram& prog, VertexId source,
                       const EngineConfig& config) {
  store.check_interval(window);
  const int m = window.length();

  RunResult result;
  result.snapshots.resize(static_cast<std::size_t>(m));
  result.values.resize(static_cast<std::size_t>(m));
  result.rows.assign(static_cast<std::size_t>(m), BreakdownRow{});
  for (int t = 0; t < m; ++t) {
    result.snapshots[static_cast<std::size_t>(t)] = window.lo + t;
    result.rows[static_cast<std::size_t>(t)].snapshot = window.lo + t;
  }

  BaselineStreamEngine engine(store.vertex_count(), prog, source, config);
  engine.initialize(store.get_version(window.lo), &result.rows.front());
  result.values.front() = engine.values();

  for (int t = window.lo; t < window.hi; ++t) {
    const std::size_t slot = static_cast<std::size_t>(t - window.lo + 1);
    engine.step(store.transition(t), &result.rows[slot]);
    result.values[slot] = engine.values();
  }
  result.mutation_free_verified = false;  // this engine edits its adjacency
  return result;
}

}  // namespace evograph
