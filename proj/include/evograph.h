/* Copyright (c) evograph contributors.
 * SPDX-License-Identifier: Apache-2.0
 *
 * evograph — evolving-graph analytics over a shared common subgraph.
 *
 * C interface of the evograph shared library. A store holds a base snapshot
 * plus ordered delta batches (edge additions/deletions) and answers
 * membership, diff and common-subgraph queries over any snapshot interval.
 * Schedules describe how query evaluation reaches every snapshot in a window
 * from the window's common graph via addition-only batches; the engine runs
 * monotone vertex programs (bfs, sssp, sswp, ssnp, viterbi) over them without
 * mutating any graph structure, or through a deletion-capable baseline that
 * streams snapshot to snapshot.
 *
 * All functions returning evg_status set a thread-local message retrievable
 * via evg_last_error() on failure. Buffers returned through out-parameters
 * are owned by the caller and released with evg_free() unless documented
 * otherwise.
 */
#ifndef EVOGRAPH_H
#define EVOGRAPH_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct evg_store evg_store;
typedef struct evg_schedule evg_schedule;
typedef struct evg_result evg_result;

typedef enum evg_status {
  EVG_OK = 0,
  EVG_ERR_INVALID_ARGUMENT,
  EVG_ERR_DUPLICATE_EDGE,
  EVG_ERR_VERTEX_OUT_OF_RANGE,
  EVG_ERR_OVERLAP,
  EVG_ERR_DELETE_MISSING_EDGE,
  EVG_ERR_ADD_EXISTING_EDGE,
  EVG_ERR_UNKNOWN_SNAPSHOT,
  EVG_ERR_NOT_ADJACENT,
  EVG_ERR_INSUFFICIENT_EDGES,
  EVG_ERR_NON_CONVERGENCE,
  EVG_ERR_PARSE,
  EVG_ERR_IO,
  EVG_ERR_INTERNAL
} evg_status;

typedef enum evg_engine {
  EVG_ENGINE_BASELINE = 0,
  EVG_ENGINE_DIRECT_HOP = 1,
  EVG_ENGINE_WORK_SHARING = 2
} evg_engine;

typedef enum evg_algo {
  EVG_ALGO_BFS = 0,
  EVG_ALGO_SSSP = 1,
  EVG_ALGO_SSWP = 2,
  EVG_ALGO_SSNP = 3,
  EVG_ALGO_VITERBI = 4
} evg_algo;

typedef struct evg_edge {
  uint32_t src;
  uint32_t dst;
  double weight;
} evg_edge;

typedef struct evg_pair {
  uint32_t src;
  uint32_t dst;
} evg_pair;

typedef struct evg_breakdown_row {
  int32_t snapshot;
  double mutation_ms;
  double incr_add_ms;
  double incr_del_ms;
  double initial_ms;
  uint64_t edge_fn_applications;
} evg_breakdown_row;

typedef struct evg_query_options {
  uint32_t source;
  uint64_t mode_threshold;      /* batch size at which drains turn synchronous */
  int32_t force_mode;           /* -1 auto, 0 synchronous, 1 asynchronous */
  uint64_t max_edge_applications; /* 0 = derive from graph size */
  int32_t threads;              /* parallel sibling subtrees in schedules */
} evg_query_options;

const char* evg_version(void);
const char* evg_status_name(evg_status status);
/* Message for the most recent failure on this thread; never NULL. */
const char* evg_last_error(void);
void evg_free(void* ptr);

evg_status evg_algo_from_name(const char* name, evg_algo* out);
const char* evg_algo_name(evg_algo algo);
const char* evg_engine_name(evg_engine engine);

/* -- store ---------------------------------------------------------------- */

evg_status evg_store_create(uint32_t vertex_count, const evg_edge* base_edges,
                            size_t base_count, evg_store** out);
/* Edge-list text: `src dst [weight]` per line, `#` comments, weight defaults
 * to 1.0; vertex count becomes max id + 1. */
evg_status evg_store_ingest(const char* edge_list_path, evg_store** out);
evg_status evg_store_open(const char* dir, evg_store** out);
evg_status evg_store_save(const evg_store* store, const char* dir);
void evg_store_free(evg_store* store);

uint32_t evg_store_vertex_count(const evg_store* store);
int32_t evg_store_snapshot_count(const evg_store* store);

evg_status evg_store_new_version(evg_store* store, const evg_edge* additions,
                                 size_t addition_count, const evg_pair* deletions,
                                 size_t deletion_count, int32_t* new_snapshot);
evg_status evg_store_get_version(const evg_store* store, int32_t t,
                                 evg_edge** edges, size_t* count);
evg_status evg_store_diff(const evg_store* store, int32_t a, int32_t b,
                          evg_edge** additions, size_t* addition_count,
                          evg_pair** deletions, size_t* deletion_count);
evg_status evg_store_common_edges(const evg_store* store, int32_t lo, int32_t hi,
                                  evg_edge** edges, size_t* count);
/* Addition-only label between adjacent triangular-grid levels: the child
 * interval must shrink the parent by exactly one snapshot. */
evg_status evg_store_delta_label(const evg_store* store, int32_t parent_lo,
                                 int32_t parent_hi, int32_t child_lo,
                                 int32_t child_hi, evg_edge** edges, size_t* count);
/* Appends `count` seeded random transitions of `batch_size` changes each. */
evg_status evg_store_gen_batches(evg_store* store, int32_t count, int32_t batch_size,
                                 double add_fraction, uint64_t seed);

/* -- schedules ------------------------------------------------------------ */

/* Builds the evaluation schedule for a window. EVG_ENGINE_WORK_SHARING runs
 * the minimum-cost tree search plus bypass merging; EVG_ENGINE_DIRECT_HOP
 * hangs every snapshot directly off the window's common graph. Batches are
 * materialized. EVG_ENGINE_BASELINE has no schedule. */
evg_status evg_schedule_build(const evg_store* store, int32_t lo, int32_t hi,
                              evg_engine engine, evg_schedule** out);
int64_t evg_schedule_cost(const evg_schedule* schedule);
/* Stable text document; release with evg_free. */
evg_status evg_schedule_export(const evg_schedule* schedule, int include_edges,
                               char** text);
void evg_schedule_free(evg_schedule* schedule);

/* -- query execution ------------------------------------------------------ */

void evg_query_options_init(evg_query_options* options);

/* Runs one vertex program over every snapshot in [lo, hi] with the chosen
 * engine. Composed-representation engines never mutate the base or overlay
 * graphs (verified by checksum, see evg_result_mutation_free). */
evg_status evg_run_query(const evg_store* store, int32_t lo, int32_t hi,
                         evg_engine engine, evg_algo algo,
                         const evg_query_options* options, evg_result** out);
/* From-scratch fixed point on one materialized snapshot. */
evg_status evg_evaluate_snapshot(const evg_store* store, int32_t t, evg_algo algo,
                                 const evg_query_options* options, evg_result** out);

size_t evg_result_snapshot_count(const evg_result* result);
int32_t evg_result_snapshot_id(const evg_result* result, size_t index);
/* Borrowed pointer, valid while the result lives; one value per vertex. */
evg_status evg_result_values(const evg_result* result, int32_t snapshot,
                             const double** values, size_t* count);
/* Borrowed pointer, one row per snapshot in ascending order. */
evg_status evg_result_breakdown(const evg_result* result,
                                const evg_breakdown_row** rows, size_t* count);
/* 1 when the engine ran without mutating any graph (checksums verified),
 * 0 otherwise (always 0 for the baseline engine). */
int evg_result_mutation_free(const evg_result* result);
/* Writes `vertex value` lines, ascending vertex id, `inf` for unreached. */
evg_status evg_result_write_file(const evg_result* result, int32_t snapshot,
                                 const char* path);
void evg_result_free(evg_result* result);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* EVOGRAPH_H */
