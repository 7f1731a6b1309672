// Copyright (c) evograph contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// fails. Run with no arguments for all criteria, or list criterion numbers;
// --cli PATH points at the command-line binary (used by criterion 8).
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "core/baseline.hpp"
#include "core/engine.hpp"
#include "core/generate.hpp"
#include "core/store.hpp"
#include "core/trigrid.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace evograph;
namespace fs = std::filesystem;

namespace {

std::string g_cli_path;

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }
};

VertexValues from_scratch(const EvolvingGraphStore& store, int t,
                          const VertexProgram& prog, VertexId source) {
  CsrGraph g = CsrGraph::from_edge_set(store.get_version(t), store.vertex_count());
  return evaluate_full(ComposedGraphView::compose(g, {}), prog, source);
}

EvolvingGraphStore synthetic_store(std::uint32_t vertex_count, std::size_t base_edges,
                                   int transitions, int batch_size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  EvolvingGraphStore store(random_edge_set(vertex_count, base_edges, rng), vertex_count);
  generate_batches(store, transitions, batch_size, 0.5, seed + 1);
  return store;
}

// The store shared by criteria 3, 4 and 6.
EvolvingGraphStore reference_store() {
  return synthetic_store(10000, 50000, 10, 500, 20240501);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// --------------------------------------------------------------------------
// 1. Worked-example reproduction: interval labels, grid weights, minimum tree
//    cost and structure, alternative tree cost, direct-hop cost.
// --------------------------------------------------------------------------
Check criterion_1() {
  Check c;
  using fixtures::numbered_edges;
  EvolvingGraphStore store = fixtures::make_example_store();

  c.expect(store.delta_label({0, 1}, {0, 0}) == numbered_edges({9, 11, 16, 23, 29}),
           "label [0,1]->[0,0]");
  c.expect(store.delta_label({0, 1}, {1, 1}) == numbered_edges({3, 12, 15}),
           "label [0,1]->[1,1]");
  c.expect(store.delta_label({1, 2}, {1, 1}) == numbered_edges({3, 4, 7, 10, 26}),
           "label [1,2]->[1,1]");
  c.expect(store.delta_label({1, 2}, {2, 2}) == numbered_edges({9, 11, 14, 24, 29}),
           "label [1,2]->[2,2]");
  c.expect(store.delta_label({0, 2}, {0, 1}) == numbered_edges({4, 7, 10, 26}),
           "label [0,2]->[0,1]");
  c.expect(store.delta_label({0, 2}, {1, 2}) == numbered_edges({12, 15}),
           "label [0,2]->[1,2]");

  TriangularGrid tg = TriangularGrid::build(store, {0, 2});
  const std::int64_t weights[6] = {
      tg.weight_left({0, 2}), tg.weight_right({0, 2}), tg.weight_left({0, 1}),
      tg.weight_right({0, 1}), tg.weight_left({1, 2}), tg.weight_right({1, 2})};
  const std::int64_t expected[6] = {4, 2, 5, 3, 5, 5};
  for (int i = 0; i < 6; ++i) {
    c.expect(weights[i] == expected[i], "grid weight " + std::to_string(i));
  }

  EvaluationSchedule schedule = solve_steiner(tg);
  c.expect(schedule.total_cost == 19, "minimum tree cost 19");
  // Winning structure: the root branches to [0,1] (both early snapshots) and
  // descends to [2,2] through [1,2].
  bool structure = schedule.root.children.size() == 2;
  if (structure) {
    const ScheduleNode& left = schedule.root.children[0];
    const ScheduleNode& right = schedule.root.children[1];
    structure = left.interval == Interval{0, 1} && left.children.size() == 2 &&
                left.batch_size == 4 && right.interval == Interval{1, 2} &&
                right.batch_size == 2 && right.children.size() == 1 &&
                right.children[0].interval == Interval{2, 2} &&
                right.children[0].batch_size == 5;
  }
  c.expect(structure, "minimum tree structure");

  // The alternative tree shares [1,2] between both late snapshots instead.
  const std::int64_t alternative = tg.weight_left({0, 2}) + tg.weight_left({0, 1}) +
                                   tg.weight_right({0, 2}) + tg.weight_left({1, 2}) +
                                   tg.weight_right({1, 2});
  c.expect(alternative == 21, "alternative tree cost 21");

  // Direct hop: batch sizes 9, 7, 7 by set algebra.
  EvaluationSchedule direct = direct_hop_schedule(store, {0, 2});
  c.expect(direct.total_cost == 23, "direct-hop cost 23");
  c.expect(direct.root.children.size() == 3 && direct.root.children[0].batch_size == 9 &&
               direct.root.children[1].batch_size == 7 &&
               direct.root.children[2].batch_size == 7,
           "direct-hop batch sizes 9/7/7");
  return c;
}

// --------------------------------------------------------------------------
// 2. Exact minimum cost against brute-force subset enumeration.
// --------------------------------------------------------------------------
Check criterion_2() {
  Check c;
  for (int m : {3, 4, 5}) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      TriangularGrid tg = oracles::random_grid(m, seed * 7919 + m);
      const std::int64_t dp = solve_steiner(tg).total_cost;
      const std::int64_t brute = oracles::brute_force_schedule_cost(tg);
      c.expect(dp == brute, "m=" + std::to_string(m) + " seed=" + std::to_string(seed) +
                                ": dp " + std::to_string(dp) + " != brute " +
                                std::to_string(brute));
      if (!c.ok) return c;
    }
  }
  c.detail = "150 random instances";
  return c;
}

// --------------------------------------------------------------------------
// 3. Engine equivalence on the synthetic reference store.
// --------------------------------------------------------------------------
Check criterion_3() {
  Check c;
  EvolvingGraphStore store = reference_store();
  const Interval window{0, store.snapshot_count() - 1};

  for (Algo algo : kAllAlgos) {
    const VertexProgram& prog = program_for(algo);
    std::vector<VertexValues> oracle;
    for (int t = window.lo; t <= window.hi; ++t) {
      oracle.push_back(from_scratch(store, t, prog, 0));
    }

    RunResult runs[3] = {
        run_baseline(store, window, prog, 0),
        run_schedule(store, direct_hop_schedule(store, window), prog, 0),
        run_schedule(store,
                     bypass_merge(solve_steiner(TriangularGrid::build(store, window))),
                     prog, 0)};
    const char* names[3] = {"baseline", "direct-hop", "work-sharing"};
    for (int e = 0; e < 3; ++e) {
      for (int t = window.lo; t <= window.hi; ++t) {
        c.expect(oracles::values_match(prog, runs[e].values_for(t).values,
                                       oracle[static_cast<std::size_t>(t)].values),
                 std::string(prog.name) + "/" + names[e] + " differs at snapshot " +
                     std::to_string(t));
        if (!c.ok) return c;
      }
    }
  }
  c.detail = "5 programs x 3 engines x 11 snapshots";
  return c;
}

// --------------------------------------------------------------------------
// 4. Mutation freedom of the composed-representation engines.
// --------------------------------------------------------------------------
Check criterion_4() {
  Check c;
  EvolvingGraphStore store = reference_store();
  const Interval window{0, store.snapshot_count() - 1};
  const VertexProgram& prog = program_for(Algo::Sssp);

  RunResult shared = run_schedule(
      store, bypass_merge(solve_steiner(TriangularGrid::build(store, window))), prog, 0);
  RunResult direct = run_schedule(store, direct_hop_schedule(store, window), prog, 0);
  for (const RunResult* run : {&shared, &direct}) {
    c.expect(run->mutation_free_verified, "checksum changed during execution");
    c.expect(run->checksum_before == run->checksum_after, "checksum mismatch");
    for (const BreakdownRow& row : run->rows) {
      c.expect(row.incr_del_ms == 0.0, "nonzero incremental-deletion time");
      c.expect(row.mutation_ms == 0.0, "nonzero mutation time");
      c.expect(row.del_edge_fn == 0, "deletion work reported");
    }
  }
  return c;
}

// --------------------------------------------------------------------------
// 5. Work-sharing cost dominance, with the advantage growing as the same
//    change volume spreads over more snapshots.
// --------------------------------------------------------------------------
Check criterion_5() {
  Check c;
  const int total_changes = 2700;
  double previous_ratio = 0.0;
  std::string trail;
  for (int m : {3, 6, 10, 16}) {
    const int batch = total_changes / (m - 1);
    EvolvingGraphStore store = synthetic_store(2000, 10000, m - 1, batch, 777);
    const Interval window{0, m - 1};
    const std::int64_t ws =
        solve_steiner(TriangularGrid::build(store, window)).total_cost;
    const std::int64_t dh = direct_hop_schedule(store, window).total_cost;
    c.expect(ws <= dh, "work-sharing " + std::to_string(ws) + " > direct-hop " +
                           std::to_string(dh) + " at m=" + std::to_string(m));
    const double ratio = static_cast<double>(dh) / static_cast<double>(ws);
    c.expect(ratio >= previous_ratio, "ratio fell from " + std::to_string(previous_ratio) +
                                          " to " + std::to_string(ratio) + " at m=" +
                                          std::to_string(m));
    previous_ratio = ratio;
    char buf[64];
    std::snprintf(buf, sizeof(buf), " m=%d:%.3f", m, ratio);
    trail += buf;
  }
  if (c.ok) c.detail = "direct-hop/work-sharing" + trail;
  return c;
}

// --------------------------------------------------------------------------
// 6. Deletion work exceeds addition work in the baseline (directional).
// --------------------------------------------------------------------------
Check criterion_6() {
  Check c;
  EvolvingGraphStore store = reference_store();
  const Interval window{0, store.snapshot_count() - 1};
  RunResult run = run_baseline(store, window, program_for(Algo::Sssp), 0);

  int deletion_heavier = 0;
  int transitions = 0;
  for (std::size_t i = 1; i < run.rows.size(); ++i) {
    ++transitions;
    if (run.rows[i].del_edge_fn > run.rows[i].add_edge_fn) ++deletion_heavier;
  }
  c.expect(transitions == 10, "expected 10 transitions");
  c.expect(deletion_heavier >= 8,
           "deletion work heavier on only " + std::to_string(deletion_heavier) +
               "/10 transitions");
  if (c.ok) {
    c.detail = "deletion work heavier on " + std::to_string(deletion_heavier) +
               "/10 transitions";
  }
  return c;
}

// --------------------------------------------------------------------------
// 7. Structural invariants: grid counts and path soundness.
// --------------------------------------------------------------------------
Check criterion_7() {
  Check c;
  for (int m = 1; m <= 12; ++m) {
    std::vector<std::int64_t> zeros(static_cast<std::size_t>(m) * m, 0);
    TriangularGrid tg = TriangularGrid::from_weights({0, m - 1}, zeros, zeros);
    c.expect(tg.node_count() == m * (m + 1) / 2, "node count at m=" + std::to_string(m));
    c.expect(tg.intermediate_level_count() == (m >= 2 ? m - 2 : 0),
             "level count at m=" + std::to_string(m));
  }

  std::mt19937_64 rng(4242);
  int checked = 0;
  while (checked < 100) {
    EvolvingGraphStore store = synthetic_store(
        80, 300, 6, 30, 9000 + static_cast<std::uint64_t>(checked));
    for (int rep = 0; rep < 5 && checked < 100; ++rep, ++checked) {
      int lo = static_cast<int>(bounded_uniform(rng, 7));
      int hi = static_cast<int>(bounded_uniform(rng, 7));
      if (lo > hi) std::swap(lo, hi);
      const Interval window{lo, hi};
      const int leaf =
          lo + static_cast<int>(bounded_uniform(rng, static_cast<std::uint64_t>(hi - lo + 1)));

      EvaluationSchedule schedule = bypass_merge(materialize_batches(
          store, solve_steiner(TriangularGrid::build(store, window))));

      // Walk the root-to-leaf path, uniting batches; disjointness and exact
      // reassembly of the leaf snapshot are both required.
      EdgeSet acc = store.common_edges(window);
      const ScheduleNode* node = &schedule.root;
      bool advanced = true;
      while (!(node->interval.lo == leaf && node->interval.hi == leaf) && advanced) {
        advanced = false;
        for (const ScheduleNode& child : node->children) {
          if (child.interval.lo <= leaf && leaf <= child.interval.hi) {
            c.expect(acc.intersect(*child.batch).empty(), "batches overlap on path");
            acc = acc.unite(*child.batch);
            node = &child;
            advanced = true;
            break;
          }
        }
      }
      c.expect(advanced, "no path to leaf " + std::to_string(leaf));
      c.expect(acc == store.get_version(leaf),
               "path union differs from snapshot " + std::to_string(leaf));
      if (!c.ok) return c;
    }
  }
  c.detail = "grids 1..12 and 100 path triples";
  return c;
}

// --------------------------------------------------------------------------
// 8. Byte-identical persistence and query determinism through the CLI.
// --------------------------------------------------------------------------
Check criterion_8() {
  Check c;
  const fs::path base = fs::temp_directory_path() / "evograph_acceptance_8";
  fs::remove_all(base);
  fs::create_directories(base);

  EvolvingGraphStore store = synthetic_store(300, 1200, 6, 60, 4321);
  const fs::path dir1 = base / "store1";
  const fs::path dir2 = base / "store2";
  store.save(dir1);
  EvolvingGraphStore::load(dir1).save(dir2);

  auto compare_trees = [&](const fs::path& a, const fs::path& b) {
    for (const auto& entry : fs::recursive_directory_iterator(a)) {
      if (!entry.is_regular_file()) continue;
      const fs::path rel = fs::relative(entry.path(), a);
      if (slurp(entry.path()) != slurp(b / rel)) {
        return "differs: " + rel.string();
      }
    }
    return std::string();
  };
  const std::string store_diff = compare_trees(dir1, dir2);
  c.expect(store_diff.empty(), "save/load/save " + store_diff);

  if (g_cli_path.empty()) {
    c.expect(false, "--cli PATH required for the query determinism check");
    return c;
  }
  auto run_query = [&](const fs::path& out) {
    const std::string cmd = g_cli_path + " query --store " + dir1.string() +
                            " --algo all --engine work-sharing --source 0 --seed 5" +
                            " --out " + out.string() + " > /dev/null";
    return std::system(cmd.c_str());
  };
  c.expect(run_query(base / "q1") == 0, "query run 1 failed");
  c.expect(run_query(base / "q2") == 0, "query run 2 failed");
  if (c.ok) {
    // Timing columns vary run to run; every result file must not.
    for (const auto& entry : fs::directory_iterator(base / "q1")) {
      const fs::path rel = entry.path().filename();
      if (rel.string().find("breakdown.") == 0) continue;
      if (slurp(entry.path()) != slurp(base / "q2" / rel)) {
        c.expect(false, "result file differs across runs: " + rel.string());
        break;
      }
    }
  }
  fs::remove_all(base);
  return c;
}

struct Criterion {
  int id;
  const char* label;
  double budget_seconds;
  std::function<Check()> run;
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--cli" && i + 1 < argc) {
      g_cli_path = argv[++i];
    } else {
      selected.push_back(std::atoi(arg.c_str()));
    }
  }

  const Criterion criteria[] = {
      {1, "worked-example reproduction", 1.0, criterion_1},
      {2, "exact minimum schedule cost vs enumeration", 30.0, criterion_2},
      {3, "engine equivalence on the synthetic store", 60.0, criterion_3},
      {4, "mutation freedom of composed engines", 5.0, criterion_4},
      {5, "cost dominance and sharing trend", 60.0, criterion_5},
      {6, "deletion work exceeds addition work in the baseline", 60.0, criterion_6},
      {7, "structural invariants", 10.0, criterion_7},
      {8, "byte-identical persistence and deterministic queries", 30.0, criterion_8},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    if (!selected.empty() &&
        std::find(selected.begin(), selected.end(), criterion.id) == selected.end()) {
      continue;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Check check;
    try {
      check = criterion.run();
    } catch (const std::exception& e) {
      check.ok = false;
      check.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (seconds > criterion.budget_seconds) {
      check.ok = false;
      check.detail = "exceeded " + std::to_string(criterion.budget_seconds) +
                     "s budget";
    }
    std::printf("[%s] criterion %d: %s (%.2fs)%s%s\n", check.ok ? "PASS" : "FAIL",
                criterion.id, criterion.label, seconds,
                check.detail.empty() ? "" : " — ", check.detail.c_str());
    if (!check.ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
