// Copyright (c) evograph contributors.
// SPDX-License-Identifier: Apache-2.0
//
// evograph command line: ingestion, synthetic batch generation, schedule
// inspection, query execution across engines, and oracle verification.
// Built entirely on the public C API of the shared library.
//
// Exit codes: 0 success, 1 verification mismatch, 2 usage or configuration
// error, 3 I/O or parse error.
#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "evograph.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct CliError {
  int code;
  std::string message;
};

[[noreturn]] void fail(evg_status status) {
  // Bad input files (unreadable, malformed, duplicate edges) are I/O-class
  // failures; everything else the CLI can trigger is a configuration error.
  const int code = (status == EVG_ERR_PARSE || status == EVG_ERR_IO ||
                    status == EVG_ERR_DUPLICATE_EDGE)
                       ? kExitIo
                       : kExitUsage;
  throw CliError{code, std::string(evg_status_name(status)) + ": " + evg_last_error()};
}

void check(evg_status status) {
  if (status != EVG_OK) fail(status);
}

struct StoreDeleter {
  void operator()(evg_store* s) const { evg_store_free(s); }
};
struct ScheduleDeleter {
  void operator()(evg_schedule* s) const { evg_schedule_free(s); }
};
struct ResultDeleter {
  void operator()(evg_result* r) const { evg_result_free(r); }
};
using StorePtr = std::unique_ptr<evg_store, StoreDeleter>;
using SchedulePtr = std::unique_ptr<evg_schedule, ScheduleDeleter>;
using ResultPtr = std::unique_ptr<evg_result, ResultDeleter>;

StorePtr open_store(const std::string& dir) {
  evg_store* store = nullptr;
  check(evg_store_open(dir.c_str(), &store));
  return StorePtr(store);
}

struct Window {
  int32_t lo = 0;
  int32_t hi = 0;
};

Window resolve_window(const std::string& spec, const evg_store* store) {
  const int32_t last = evg_store_snapshot_count(store) - 1;
  if (spec.empty()) return Window{0, last};
  Window w;
  const auto colon = spec.find(':');
  try {
    if (colon == std::string::npos) {
      w.lo = w.hi = std::stoi(spec);
    } else {
      w.lo = std::stoi(spec.substr(0, colon));
      w.hi = std::stoi(spec.substr(colon + 1));
    }
  } catch (const std::exception&) {
    throw CliError{kExitUsage, "invalid --window '" + spec + "', expected LO:HI"};
  }
  if (w.lo < 0 || w.hi > last || w.lo > w.hi) {
    throw CliError{kExitUsage, "window " + std::to_string(w.lo) + ":" +
                                   std::to_string(w.hi) +
                                   " outside stored snapshots 0:" + std::to_string(last)};
  }
  return w;
}

std::vector<evg_algo> resolve_algos(const std::string& name) {
  if (name == "all") {
    return {EVG_ALGO_BFS, EVG_ALGO_SSSP, EVG_ALGO_SSWP, EVG_ALGO_SSNP, EVG_ALGO_VITERBI};
  }
  evg_algo algo;
  if (evg_algo_from_name(name.c_str(), &algo) != EVG_OK) {
    throw CliError{kExitUsage, "unknown --algo '" + name +
                                   "' (expected bfs|sssp|sswp|ssnp|viterbi|all)"};
  }
  return {algo};
}

evg_engine resolve_engine(const std::string& name) {
  if (name == "baseline") return EVG_ENGINE_BASELINE;
  if (name == "direct-hop") return EVG_ENGINE_DIRECT_HOP;
  if (name == "work-sharing") return EVG_ENGINE_WORK_SHARING;
  throw CliError{kExitUsage, "unknown --engine '" + name +
                                 "' (expected baseline|direct-hop|work-sharing)"};
}

evg_query_options make_options(uint32_t source, int threads) {
  evg_query_options options;
  evg_query_options_init(&options);
  options.source = source;
  options.threads = threads;
  if (const char* env = std::getenv("EVOGRAPH_MODE_THRESHOLD")) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') {
      throw CliError{kExitUsage,
                     std::string("invalid EVOGRAPH_MODE_THRESHOLD '") + env + "'"};
    }
    options.mode_threshold = value;
  }
  return options;
}

std::string snapshot_tag(int32_t t) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04" PRId32, t);
  return buf;
}

void write_text_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CliError{kExitIo, "cannot open " + path.string() + " for writing"};
  out << body;
  if (!out) throw CliError{kExitIo, "write failed: " + path.string()};
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

int cmd_ingest(const std::string& edges_file, const std::string& out_dir) {
  evg_store* raw = nullptr;
  check(evg_store_ingest(edges_file.c_str(), &raw));
  StorePtr store(raw);
  check(evg_store_save(store.get(), out_dir.c_str()));

  evg_edge* edges = nullptr;
  size_t count = 0;
  check(evg_store_get_version(store.get(), 0, &edges, &count));
  evg_free(edges);
  std::printf("store %s: vertices=%u edges=%zu snapshots=1\n", out_dir.c_str(),
              evg_store_vertex_count(store.get()), count);
  return kExitOk;
}

int cmd_gen_batches(const std::string& store_dir, int count, int batch_size,
                    double add_fraction, uint64_t seed) {
  StorePtr store = open_store(store_dir);
  check(evg_store_gen_batches(store.get(), count, batch_size, add_fraction, seed));
  check(evg_store_save(store.get(), store_dir.c_str()));
  std::printf("store %s: snapshots=%d (appended %d transitions of %d changes, "
              "add_fraction=%g, seed=%" PRIu64 ")\n",
              store_dir.c_str(), evg_store_snapshot_count(store.get()), count,
              batch_size, add_fraction, seed);
  return kExitOk;
}

int cmd_schedule(const std::string& store_dir, const std::string& window_spec,
                 const std::string& engine_name, bool export_edges,
                 const std::string& out_file) {
  StorePtr store = open_store(store_dir);
  const Window w = resolve_window(window_spec, store.get());
  const evg_engine engine = resolve_engine(engine_name);
  if (engine == EVG_ENGINE_BASELINE) {
    throw CliError{kExitUsage, "schedule requires --engine direct-hop or work-sharing"};
  }

  evg_schedule* raw = nullptr;
  check(evg_schedule_build(store.get(), w.lo, w.hi, engine, &raw));
  SchedulePtr selected(raw);
  check(evg_schedule_build(store.get(), w.lo, w.hi, EVG_ENGINE_DIRECT_HOP, &raw));
  SchedulePtr direct(raw);
  check(evg_schedule_build(store.get(), w.lo, w.hi, EVG_ENGINE_WORK_SHARING, &raw));
  SchedulePtr shared(raw);

  char* text = nullptr;
  check(evg_schedule_export(selected.get(), export_edges ? 1 : 0, &text));
  std::string document(text);
  evg_free(text);
  document += "# cost work-sharing " + std::to_string(evg_schedule_cost(shared.get())) +
              "\n# cost direct-hop " + std::to_string(evg_schedule_cost(direct.get())) +
              "\n";

  if (out_file.empty()) {
    std::fputs(document.c_str(), stdout);
  } else {
    write_text_file(out_file, document);
    std::printf("schedule %s window %d:%d -> %s\n", engine_name.c_str(), w.lo, w.hi,
                out_file.c_str());
    std::printf("cost work-sharing %" PRId64 "\ncost direct-hop %" PRId64 "\n",
                evg_schedule_cost(shared.get()), evg_schedule_cost(direct.get()));
  }
  return kExitOk;
}

void write_breakdown_csv(const std::filesystem::path& path, const char* engine_name,
                         const evg_result* result) {
  const evg_breakdown_row* rows = nullptr;
  size_t count = 0;
  check(evg_result_breakdown(result, &rows, &count));
  std::string csv =
      "engine,snapshot,mutation_ms,incr_add_ms,incr_del_ms,initial_ms,"
      "edge_fn_applications\n";
  char line[256];
  for (size_t i = 0; i < count; ++i) {
    std::snprintf(line, sizeof(line), "%s,%" PRId32 ",%.6f,%.6f,%.6f,%.6f,%" PRIu64 "\n",
                  engine_name, rows[i].snapshot, rows[i].mutation_ms,
                  rows[i].incr_add_ms, rows[i].incr_del_ms, rows[i].initial_ms,
                  rows[i].edge_fn_applications);
    csv += line;
  }
  write_text_file(path, csv);
}

int cmd_query(const std::string& store_dir, const std::string& window_spec,
              const std::string& algo_name, uint32_t source,
              const std::string& engine_name, const std::string& out_dir, int threads) {
  StorePtr store = open_store(store_dir);
  const Window w = resolve_window(window_spec, store.get());
  const evg_engine engine = resolve_engine(engine_name);
  const evg_query_options options = make_options(source, threads);

  std::filesystem::create_directories(out_dir);
  for (evg_algo algo : resolve_algos(algo_name)) {
    evg_result* raw = nullptr;
    check(evg_run_query(store.get(), w.lo, w.hi, engine, algo, &options, &raw));
    ResultPtr result(raw);

    const std::string prefix =
        std::string(evg_algo_name(algo)) + "." + evg_engine_name(engine);
    for (int32_t t = w.lo; t <= w.hi; ++t) {
      const auto path =
          std::filesystem::path(out_dir) / (prefix + "." + snapshot_tag(t) + ".txt");
      check(evg_result_write_file(result.get(), t, path.string().c_str()));
    }
    write_breakdown_csv(std::filesystem::path(out_dir) / ("breakdown." + prefix + ".csv"),
                        evg_engine_name(engine), result.get());
    std::printf("query algo=%s engine=%s window=%d:%d -> %d result files in %s\n",
                evg_algo_name(algo), evg_engine_name(engine), w.lo, w.hi,
                w.hi - w.lo + 1, out_dir.c_str());
  }
  return kExitOk;
}

bool values_equal(evg_algo algo, double got, double want) {
  if (algo == EVG_ALGO_VITERBI) {
    return std::abs(got - want) <=
           1e-9 * std::max({std::abs(got), std::abs(want), 1.0});
  }
  return got == want;
}

// Parses a `vertex value` result file into a dense value array.
std::vector<double> read_result_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CliError{kExitIo, "cannot open " + path.string()};
  std::vector<double> values;
  std::string vertex_token;
  std::string value_token;
  while (in >> vertex_token >> value_token) {
    char* end = nullptr;
    const double value = std::strtod(value_token.c_str(), &end);
    if (end == value_token.c_str() || *end != '\0') {
      throw CliError{kExitIo, path.string() + ": bad value '" + value_token + "'"};
    }
    values.push_back(value);
  }
  return values;
}

int cmd_verify(const std::string& store_dir, const std::string& window_spec,
               const std::string& algo_name, uint32_t source, int threads,
               const std::string& results_dir) {
  StorePtr store = open_store(store_dir);
  const Window w = resolve_window(window_spec, store.get());
  const evg_query_options options = make_options(source, threads);
  constexpr evg_engine kEngines[] = {EVG_ENGINE_BASELINE, EVG_ENGINE_DIRECT_HOP,
                                     EVG_ENGINE_WORK_SHARING};

  bool all_ok = true;
  std::size_t files_checked = 0;
  for (evg_algo algo : resolve_algos(algo_name)) {
    // From-scratch oracle per snapshot, shared by all engines.
    std::vector<ResultPtr> oracle;
    for (int32_t t = w.lo; t <= w.hi; ++t) {
      evg_result* raw = nullptr;
      check(evg_evaluate_snapshot(store.get(), t, algo, &options, &raw));
      oracle.emplace_back(raw);
    }

    for (evg_engine engine : kEngines) {
      bool engine_ok = true;
      auto report_mismatch = [&](int32_t t, size_t v, double got, double want) {
        std::printf("verify algo=%s engine=%s: MISMATCH at snapshot %" PRId32
                    " vertex %zu: got %.17g want %.17g\n",
                    evg_algo_name(algo), evg_engine_name(engine), t, v, got, want);
        engine_ok = false;
        all_ok = false;
      };

      if (!results_dir.empty()) {
        // Check previously written result files instead of re-running engines.
        for (int32_t t = w.lo; t <= w.hi && engine_ok; ++t) {
          const auto path = std::filesystem::path(results_dir) /
                            (std::string(evg_algo_name(algo)) + "." +
                             evg_engine_name(engine) + "." + snapshot_tag(t) + ".txt");
          if (!std::filesystem::exists(path)) continue;
          ++files_checked;
          const std::vector<double> got = read_result_file(path);
          const double* want = nullptr;
          size_t n_want = 0;
          check(evg_result_values(oracle[static_cast<size_t>(t - w.lo)].get(), t, &want,
                                  &n_want));
          if (got.size() != n_want) {
            report_mismatch(t, got.size(), 0.0, 0.0);
            break;
          }
          for (size_t v = 0; v < n_want; ++v) {
            if (!values_equal(algo, got[v], want[v])) {
              report_mismatch(t, v, got[v], want[v]);
              break;
            }
          }
        }
        continue;
      }

      evg_result* raw = nullptr;
      check(evg_run_query(store.get(), w.lo, w.hi, engine, algo, &options, &raw));
      ResultPtr result(raw);
      for (int32_t t = w.lo; t <= w.hi && engine_ok; ++t) {
        const double* got = nullptr;
        const double* want = nullptr;
        size_t n_got = 0;
        size_t n_want = 0;
        check(evg_result_values(result.get(), t, &got, &n_got));
        check(evg_result_values(oracle[static_cast<size_t>(t - w.lo)].get(), t, &want,
                                &n_want));
        for (size_t v = 0; v < n_got; ++v) {
          if (!values_equal(algo, got[v], want[v])) {
            report_mismatch(t, v, got[v], want[v]);
            break;
          }
        }
      }
      if (engine_ok) {
        std::printf("verify algo=%s engine=%s: ok (%d snapshots)\n", evg_algo_name(algo),
                    evg_engine_name(engine), w.hi - w.lo + 1);
      }
    }
  }
  if (!results_dir.empty()) {
    if (files_checked == 0) {
      throw CliError{kExitUsage, "no result files found under " + results_dir};
    }
    std::printf("verify: %zu result files checked\n", files_checked);
  }
  std::printf("verification %s\n", all_ok ? "passed" : "failed");
  return all_ok ? kExitOk : kExitVerifyMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"evolving-graph analytics over a shared common subgraph"};
  app.require_subcommand(1);

  std::string store_dir;
  std::string window_spec;
  std::string algo_name = "all";
  std::string engine_name = "work-sharing";
  std::string out_path;
  std::string edges_file;
  uint32_t source = 0;
  uint64_t seed = 42;
  int batch_size = 0;
  int count = 0;
  double add_fraction = 0.5;
  int threads = 1;
  bool export_edges = false;

  auto* ingest = app.add_subcommand("ingest", "build a store from an edge-list file");
  ingest->add_option("edges", edges_file, "edge-list text file")->required();
  ingest->add_option("--out", out_path, "store directory to create")->required();

  auto* gen = app.add_subcommand("gen-batches", "append seeded random transitions");
  gen->add_option("--store", store_dir, "store directory")->required();
  gen->add_option("--count", count, "number of transitions")->required();
  gen->add_option("--batch-size", batch_size, "changes per transition")->required();
  gen->add_option("--add-fraction", add_fraction, "fraction of changes that are additions");
  gen->add_option("--seed", seed, "random seed");

  auto* schedule = app.add_subcommand("schedule", "export an evaluation schedule");
  schedule->add_option("--store", store_dir, "store directory")->required();
  schedule->add_option("--window", window_spec, "snapshot window LO:HI (default all)");
  schedule->add_option("--engine", engine_name, "direct-hop or work-sharing");
  schedule->add_flag("--export-edges", export_edges, "include batch edges");
  schedule->add_option("--out", out_path, "write the document here instead of stdout");

  auto* query = app.add_subcommand("query", "run a vertex program over a window");
  query->add_option("--store", store_dir, "store directory")->required();
  query->add_option("--window", window_spec, "snapshot window LO:HI (default all)");
  query->add_option("--algo", algo_name, "bfs|sssp|sswp|ssnp|viterbi|all");
  query->add_option("--source", source, "source vertex");
  query->add_option("--engine", engine_name, "baseline|direct-hop|work-sharing");
  query->add_option("--out", out_path, "output directory")->required();
  query->add_option("--threads", threads, "parallel schedule subtrees");
  query->add_option("--seed", seed, "recorded for reproducibility");

  std::string results_dir;
  auto* verify = app.add_subcommand("verify", "compare every engine to from-scratch runs");
  verify->add_option("--store", store_dir, "store directory")->required();
  verify->add_option("--window", window_spec, "snapshot window LO:HI (default all)");
  verify->add_option("--algo", algo_name, "bfs|sssp|sswp|ssnp|viterbi|all");
  verify->add_option("--source", source, "source vertex");
  verify->add_option("--threads", threads, "parallel schedule subtrees");
  verify->add_option("--results", results_dir,
                     "check result files written by `query` instead of re-running");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (ingest->parsed()) return cmd_ingest(edges_file, out_path);
    if (gen->parsed()) return cmd_gen_batches(store_dir, count, batch_size, add_fraction, seed);
    if (schedule->parsed()) {
      return cmd_schedule(store_dir, window_spec, engine_name, export_edges, out_path);
    }
    if (query->parsed()) {
      return cmd_query(store_dir, window_spec, algo_name, source, engine_name, out_path,
                       threads);
    }
    if (verify->parsed()) {
      return cmd_verify(store_dir, window_spec, algo_name, source, threads, results_dir);
    }
  } catch (const CliError& e) {
    std::fprintf(stderr, "evograph: %s\n", e.message.c_str());
    return e.code;
  }
  return kExitUsage;
}
