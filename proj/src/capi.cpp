// Copyright (c) evograph contributors.
// SPDX-License-Identifier: Apache-2.0
//
// extern "C" surface of the shared library: opaque handles over the core
// types, exceptions mapped to status codes, thread-local error messages.
#include "evograph.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "core/baseline.hpp"
#include "core/engine.hpp"
#include "core/errors.hpp"
#include "core/generate.hpp"
#include "core/programs.hpp"
#include "core/store.hpp"
#include "core/text_io.hpp"
#include "core/trigrid.hpp"

using namespace evograph;

struct evg_store {
  EvolvingGraphStore store;
};

struct evg_schedule {
  EvaluationSchedule schedule;
};

struct evg_result {
  RunResult result;
  std::vector<evg_breakdown_row> rows;
};

namespace {

thread_local std::string g_last_error;

evg_status status_from(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
      return EVG_ERR_INVALID_ARGUMENT;
    case ErrorCode::DuplicateEdge:
      return EVG_ERR_DUPLICATE_EDGE;
    case ErrorCode::VertexOutOfRange:
      return EVG_ERR_VERTEX_OUT_OF_RANGE;
    case ErrorCode::Overlap:
      return EVG_ERR_OVERLAP;
    case ErrorCode::DeleteMissingEdge:
      return EVG_ERR_DELETE_MISSING_EDGE;
    case ErrorCode::AddExistingEdge:
      return EVG_ERR_ADD_EXISTING_EDGE;
    case ErrorCode::UnknownSnapshot:
      return EVG_ERR_UNKNOWN_SNAPSHOT;
    case ErrorCode::NotAdjacent:
      return EVG_ERR_NOT_ADJACENT;
    case ErrorCode::InsufficientEdges:
      return EVG_ERR_INSUFFICIENT_EDGES;
    case ErrorCode::NonConvergence:
      return EVG_ERR_NON_CONVERGENCE;
    case ErrorCode::Parse:
      return EVG_ERR_PARSE;
    case ErrorCode::Io:
      return EVG_ERR_IO;
  }
  return EVG_ERR_INTERNAL;
}

template <class Fn>
evg_status guarded(Fn&& fn) {
  try {
    fn();
    return EVG_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_from(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return EVG_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return EVG_ERR_INTERNAL;
  }
}

evg_status require(bool condition, const char* message) {
  if (condition) return EVG_OK;
  g_last_error = message;
  return EVG_ERR_INVALID_ARGUMENT;
}

evg_edge* copy_edges(const EdgeSet& edges) {
  auto* out = static_cast<evg_edge*>(std::malloc(sizeof(evg_edge) * (edges.size() + 1)));
  if (!out) throw std::bad_alloc();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    out[i] = evg_edge{edges[i].src, edges[i].dst, edges[i].weight};
  }
  return out;
}

evg_pair* copy_pairs(const EdgeSet& edges) {
  auto* out = static_cast<evg_pair*>(std::malloc(sizeof(evg_pair) * (edges.size() + 1)));
  if (!out) throw std::bad_alloc();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    out[i] = evg_pair{edges[i].src, edges[i].dst};
  }
  return out;
}

char* copy_string(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

EngineConfig config_from(const evg_query_options* options) {
  EngineConfig config;
  if (options) {
    config.mode_threshold = options->mode_threshold;
    config.force_mode = options->force_mode;
    config.max_edge_applications = options->max_edge_applications;
    config.threads = options->threads > 0 ? options->threads : 1;
  }
  return config;
}

evg_result* wrap_result(RunResult&& run) {
  auto* out = new evg_result{std::move(run), {}};
  out->rows.reserve(out->result.rows.size());
  for (const BreakdownRow& row : out->result.rows) {
    out->rows.push_back(evg_breakdown_row{row.snapshot, row.mutation_ms,
                                          row.incr_add_ms, row.incr_del_ms,
                                          row.initial_ms, row.edge_fn_applications});
  }
  return out;
}

}  // namespace

const char* evg_version(void) { return "1.0.0"; }

const char* evg_status_name(evg_status status) {
  switch (status) {
    case EVG_OK:
      return "ok";
    case EVG_ERR_INVALID_ARGUMENT:
      return "invalid-argument";
    case EVG_ERR_DUPLICATE_EDGE:
      return "duplicate-edge";
    case EVG_ERR_VERTEX_OUT_OF_RANGE:
      return "vertex-out-of-range";
    case EVG_ERR_OVERLAP:
      return "overlap";
    case EVG_ERR_DELETE_MISSING_EDGE:
      return "delete-missing-edge";
    case EVG_ERR_ADD_EXISTING_EDGE:
      return "add-existing-edge";
    case EVG_ERR_UNKNOWN_SNAPSHOT:
      return "unknown-snapshot";
    case EVG_ERR_NOT_ADJACENT:
      return "not-adjacent";
    case EVG_ERR_INSUFFICIENT_EDGES:
      return "insufficient-edges";
    case EVG_ERR_NON_CONVERGENCE:
      return "non-convergence";
    case EVG_ERR_PARSE:
      return "parse-error";
    case EVG_ERR_IO:
      return "io-error";
    case EVG_ERR_INTERNAL:
      return "internal-error";
  }
  return "unknown";
}

const char* evg_last_error(void) { return g_last_error.c_str(); }

void evg_free(void* ptr) { std::free(ptr); }

evg_status evg_algo_from_name(const char* name, evg_algo* out) {
  if (auto st = require(name && out, "null argument"); st != EVG_OK) return st;
  const auto algo = algo_from_name(name);
  if (!algo) {
    g_last_error = std::string("unknown algorithm '") + name + "'";
    return EVG_ERR_INVALID_ARGUMENT;
  }
  *out = static_cast<evg_algo>(static_cast<int>(*algo));
  return EVG_OK;
}

const char* evg_algo_name(evg_algo algo) {
  return program_for(static_cast<Algo>(algo)).name.data();
}

const char* evg_engine_name(evg_engine engine) {
  switch (engine) {
    case EVG_ENGINE_BASELINE:
      return "baseline";
    case EVG_ENGINE_DIRECT_HOP:
      return "direct-hop";
    case EVG_ENGINE_WORK_SHARING:
      return "work-sharing";
  }
  return "unknown";
}

// -- store -------------------------------------------------------------------

evg_status evg_store_create(uint32_t vertex_count, const evg_edge* base_edges,
                            size_t base_count, evg_store** out) {
  if (auto st = require(out && (base_edges || base_count == 0), "null argument");
      st != EVG_OK) {
    return st;
  }
  return guarded([&] {
    std::vector<Edge> edges;
    edges.reserve(base_count);
    for (size_t i = 0; i < base_count; ++i) {
      edges.push_back(Edge{base_edges[i].src, base_edges[i].dst, base_edges[i].weight});
    }
    *out = new evg_store{EvolvingGraphStore(EdgeSet::from_edges(std::move(edges)),
                                            vertex_count)};
  });
}

evg_status evg_store_ingest(const char* edge_list_path, evg_store** out) {
  if (auto st = require(edge_list_path && out, "null argument"); st != EVG_OK) return st;
  return guarded([&] {
    *out = new evg_store{EvolvingGraphStore::ingest_edge_list(edge_list_path)};
  });
}

evg_status evg_store_open(const char* dir, evg_store** out) {
  if (auto st = require(dir && out, "null argument"); st != EVG_OK) return st;
  return guarded([&] { *out = new evg_store{EvolvingGraphStore::load(dir)}; });
}

evg_status evg_store_save(const evg_store* store, const char* dir) {
  if (auto st = require(store && dir, "null argument"); st != EVG_OK) return st;
  return guarded([&] { store->store.save(dir); });
}

void evg_store_free(evg_store* store) { delete store; }

uint32_t evg_store_vertex_count(const evg_store* store) {
  return store ? store->store.vertex_count() : 0;
}

int32_t evg_store_snapshot_count(const evg_store* store) {
  return store ? store->store.snapshot_count() : 0;
}

evg_status evg_store_new_version(evg_store* store, const evg_edge* additions,
                                 size_t addition_count, const evg_pair* deletions,
                                 size_t deletion_count, int32_t* new_snapshot) {
  if (auto st = require(store && (additions || addition_count == 0) &&
                            (deletions || deletion_count == 0),
                        "null argument");
      st != EVG_OK) {
    return st;
  }
  return guarded([&] {
    std::vector<Edge> adds;
    adds.reserve(addition_count);
    for (size_t i = 0; i < addition_count; ++i) {
      adds.push_back(Edge{additions[i].src, additions[i].dst, additions[i].weight});
    }
    std::vector<Edge> dels;
    dels.reserve(deletion_count);
    for (size_t i = 0; i < deletion_count; ++i) {
      dels.push_back(Edge{deletions[i].src, deletions[i].dst, 1.0});
    }
    const int id = store->store.new_version(DeltaBatch{
        EdgeSet::from_edges(std::move(adds)), EdgeSet::from_edges(std::move(dels))});
    if (new_snapshot) *new_snapshot = id;
  });
}

evg_status evg_store_get_version(const evg_store* store, int32_t t, evg_edge** edges,
                                 size_t* count) {
  if (auto st = require(store && edges && count, "null argument"); st != EVG_OK) return st;
  return guarded([&] {
    const EdgeSet set = store->store.get_version(t);
    *edges = copy_edges(set);
    *count = set.size();
  });
}

evg_status evg_store_diff(const evg_store* store, int32_t a, int32_t b,
                          evg_edge** additions, size_t* addition_count,
                          evg_pair** deletions, size_t* deletion_count) {
  if (auto st = require(store && additions && addition_count && deletions &&
                            deletion_count,
                        "null argument");
      st != EVG_OK) {
    return st;
  }
  return guarded([&] {
    const DeltaBatch batch = store->store.diff(a, b);
    *additions = copy_edges(batch.additions);
    *addition_count = batch.additions.size();
    *deletions = copy_pairs(batch.deletions);
    *deletion_count = batch.deletions.size();
  });
}

evg_status evg_store_common_edges(const evg_store* store, int32_t lo, int32_t hi,
                                  evg_edge** edges, size_t* count) {
  if (auto st = require(store && edges && count, "null argument"); st != EVG_OK) return st;
  return guarded([&] {
    const EdgeSet set = store->store.common_edges(Interval{lo, hi});
    *edges = copy_edges(set);
    *count = set.size();
  });
}

evg_status evg_store_delta_label(const evg_store* store, int32_t parent_lo,
                                 int32_t parent_hi, int32_t child_lo, int32_t child_hi,
                                 evg_edge** edges, size_t* count) {
  if (auto st = require(store && edges && count, "null argument"); st != EVG_OK) return st;
  return guarded([&] {
    const EdgeSet set = store->store.delta_label(Interval{parent_lo, parent_hi},
                                                 Interval{child_lo, child_hi});
    *edges = copy_edges(set);
    *count = set.size();
  });
}

evg_status evg_store_gen_batches(evg_store* store, int32_t count, int32_t batch_size,
                                 double add_fraction, uint64_t seed) {
  if (auto st = require(store != nullptr, "null argument"); st != EVG_OK) return st;
  return guarded([&] {
    generate_batches(store->store, count, batch_size, add_fraction, seed);
  });
}

// -- schedules ----------------------------------------------------------------

evg_status evg_schedule_build(const evg_store* store, int32_t lo, int32_t hi,
                              evg_engine engine, evg_schedule** out) {
  if (auto st = require(store && out, "null argument"); st != EVG_OK) return st;
  if (engine == EVG_ENGINE_BASELINE) {
    g_last_error = "the baseline engine streams snapshots and has no schedule";
    return EVG_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    const Interval window{lo, hi};
    EvaluationSchedule schedule;
    if (engine == EVG_ENGINE_DIRECT_HOP) {
      schedule = direct_hop_schedule(store->store, window);
    } else {
      schedule = bypass_merge(solve_steiner(TriangularGrid::build(store->store, window)));
    }
    schedule = materialize_batches(store->store, std::move(schedule));
    *out = new evg_schedule{std::move(schedule)};
  });
}

int64_t evg_schedule_cost(const evg_schedule* schedule) {
  return schedule ? schedule->schedule.total_cost : -1;
}

evg_status evg_schedule_export(const evg_schedule* schedule, int include_edges,
                               char** text) {
  if (auto st = require(schedule && text, "null argument"); st != EVG_OK) return st;
  return guarded([&] {
    *text = copy_string(schedule_to_text(schedule->schedule, include_edges != 0));
  });
}

void evg_schedule_free(evg_schedule* schedule) { delete schedule; }

// -- query execution -----------------------------------------------------------

void evg_query_options_init(evg_query_options* options) {
  if (!options) return;
  options->source = 0;
  options->mode_threshold = 10000;
  options->force_mode = -1;
  options->max_edge_applications = 0;
  options->threads = 1;
}

evg_status evg_run_query(const evg_store* store, int32_t lo, int32_t hi,
                         evg_engine engine, evg_algo algo,
                         const evg_query_options* options, evg_result** out) {
  if (auto st = require(store && out, "null argument"); st != EVG_OK) return st;
  return guarded([&] {
    const EngineConfig config = config_from(options);
    const VertexProgram& prog = program_for(static_cast<Algo>(algo));
    const VertexId source = options ? options->source : 0;
    const Interval window{lo, hi};
    RunResult run;
    if (engine == EVG_ENGINE_BASELINE) {
      run = run_baseline(store->store, window, prog, source, config);
    } else {
      EvaluationSchedule schedule;
      if (engine == EVG_ENGINE_DIRECT_HOP) {
        schedule = direct_hop_schedule(store->store, window);
      } else {
        schedule =
            bypass_merge(solve_steiner(TriangularGrid::build(store->store, window)));
      }
      schedule = materialize_batches(store->store, std::move(schedule));
      run = run_schedule(store->store, schedule, prog, source, config);
    }
    *out = wrap_result(std::move(run));
  });
}

evg_status evg_evaluate_snapshot(const evg_store* store, int32_t t, evg_algo algo,
                                 const evg_query_options* options, evg_result** out) {
  if (auto st = require(store && out, "null argument"); st != EVG_OK) return st;
  return guarded([&] {
    const EngineConfig config = config_from(options);
    const VertexProgram& prog = program_for(static_cast<Algo>(algo));
    const VertexId source = options ? options->source : 0;
    store->store.check_snapshot(t);
    const CsrGraph csr =
        CsrGraph::from_edge_set(store->store.get_version(t), store->store.vertex_count());
    const ComposedGraphView view = ComposedGraphView::compose(csr, {});
    DrainStats stats;
    RunResult run;
    run.snapshots = {t};
    run.rows.assign(1, BreakdownRow{});
    run.rows[0].snapshot = t;
    run.values.push_back(evaluate_full(view, prog, source, config, &stats));
    run.rows[0].edge_fn_applications = stats.edge_applications;
    run.rows[0].add_edge_fn = stats.edge_applications;
    run.mutation_free_verified = true;
    *out = wrap_result(std::move(run));
  });
}

size_t evg_result_snapshot_count(const evg_result* result) {
  return result ? result->result.snapshots.size() : 0;
}

int32_t evg_result_snapshot_id(const evg_result* result, size_t index) {
  if (!result || index >= result->result.snapshots.size()) return -1;
  return result->result.snapshots[index];
}

evg_status evg_result_values(const evg_result* result, int32_t snapshot,
                             const double** values, size_t* count) {
  if (auto st = require(result && values && count, "null argument"); st != EVG_OK) {
    return st;
  }
  return guarded([&] {
    const VertexValues& vals = result->result.values_for(snapshot);
    *values = vals.values.data();
    *count = vals.values.size();
  });
}

evg_status evg_result_breakdown(const evg_result* result,
                                const evg_breakdown_row** rows, size_t* count) {
  if (auto st = require(result && rows && count, "null argument"); st != EVG_OK) {
    return st;
  }
  *rows = result->rows.data();
  *count = result->rows.size();
  return EVG_OK;
}

int evg_result_mutation_free(const evg_result* result) {
  return result && result->result.mutation_free_verified ? 1 : 0;
}

evg_status evg_result_write_file(const evg_result* result, int32_t snapshot,
                                 const char* path) {
  if (auto st = require(result && path, "null argument"); st != EVG_OK) return st;
  return guarded([&] {
    const VertexValues& vals = result->result.values_for(snapshot);
    std::string body;
    body.reserve(vals.values.size() * 8);
    for (std::size_t v = 0; v < vals.values.size(); ++v) {
      body += std::to_string(v);
      body += ' ';
      append_double(body, vals.values[v]);
      body += '\n';
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) raise(ErrorCode::Io, std::string("cannot open ") + path + " for writing");
    out << body;
    if (!out) raise(ErrorCode::Io, std::string("write failed: ") + path);
  });
}

void evg_result_free(evg_result* result) { delete result; }
