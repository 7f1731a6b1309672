// Copyright (c) evograph contributors.
// SPDX-License-Identifier: Apache-2.0
#include "core/engine.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "core/baseline.hpp"
#include "core/errors.hpp"
#include "core/generate.hpp"
#include "doctest.h"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace evograph;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ComposedGraphView single_view(const CsrGraph& g) {
  return ComposedGraphView::compose(g, {});
}

CsrGraph csr_of(std::initializer_list<Edge> edges, std::uint32_t n) {
  return CsrGraph::from_edge_set(EdgeSet::from_edges(edges), n);
}

}  // namespace

TEST_CASE("edge functions follow their push operations") {
  const auto& bfs = program_for(Algo::Bfs);
  CHECK(bfs.edge_function(3.0, 99.0) == 4.0);  // weight ignored
  CHECK(bfs.improves(2.0, 3.0));
  CHECK(!bfs.improves(3.0, 3.0));

  const auto& sssp = program_for(Algo::Sssp);
  CHECK(sssp.edge_function(3.0, 2.5) == 5.5);

  const auto& sswp = program_for(Algo::Sswp);
  CHECK(sswp.edge_function(4.0, 2.0) == 2.0);  // min, maximized
  CHECK(sswp.edge_function(1.0, 2.0) == 1.0);
  CHECK(sswp.improves(3.0, 2.0));

  const auto& ssnp = program_for(Algo::Ssnp);
  CHECK(ssnp.edge_function(4.0, 2.0) == 4.0);  // max, minimized
  CHECK(ssnp.edge_function(1.0, 2.0) == 2.0);

  const auto& viterbi = program_for(Algo::Viterbi);
  CHECK(viterbi.edge_function(1.0, 4.0) == 0.25);
  CHECK(viterbi.improves(0.5, 0.25));

  CHECK(algo_from_name("sswp") == Algo::Sswp);
  CHECK(!algo_from_name("pagerank").has_value());
}

TEST_CASE("edge functions are monotone in the source value") {
  // Improving Val(u) never yields a worse candidate for v; addition-only
  // incremental updates rely on this.
  std::mt19937_64 rng(77);
  for (Algo algo : kAllAlgos) {
    const VertexProgram& prog = program_for(algo);
    for (int iter = 0; iter < 200; ++iter) {
      const double w = 1.0 + static_cast<double>(rng() % 100);
      double a = static_cast<double>(rng() % 1000) / 8.0;
      double b = static_cast<double>(rng() % 1000) / 8.0;
      if (prog.improves(b, a)) std::swap(a, b);  // now a is not worse than b
      const double fa = prog.edge_function(a, w);
      const double fb = prog.edge_function(b, w);
      CHECK(!prog.improves(fb, fa));
    }
  }
}

TEST_CASE("full evaluation on a path") {
  CsrGraph g = csr_of({{0, 1, 2.0}, {1, 2, 3.0}}, 4);
  VertexValues vals = evaluate_full(single_view(g), program_for(Algo::Bfs), 0);
  CHECK(vals.values == std::vector<double>{0.0, 1.0, 2.0, kInf});

  vals = evaluate_full(single_view(g), program_for(Algo::Sssp), 0);
  CHECK(vals.values == std::vector<double>{0.0, 2.0, 5.0, kInf});

  vals = evaluate_full(single_view(g), program_for(Algo::Sswp), 0);
  CHECK(vals.values == std::vector<double>{kInf, 2.0, 2.0, 0.0});

  vals = evaluate_full(single_view(g), program_for(Algo::Ssnp), 0);
  CHECK(vals.values == std::vector<double>{0.0, 2.0, 3.0, kInf});

  vals = evaluate_full(single_view(g), program_for(Algo::Viterbi), 0);
  CHECK(vals.values == std::vector<double>{1.0, 0.5, 0.5 / 3.0, 0.0});
}

TEST_CASE("source out of range") {
  CsrGraph g = csr_of({{0, 1, 1.0}}, 2);
  CHECK_THROWS_AS(evaluate_full(single_view(g), program_for(Algo::Bfs), 5), Error);
}

TEST_CASE("viterbi rejects weights below one") {
  CsrGraph g = csr_of({{0, 1, 0.5}}, 2);
  CHECK_THROWS_WITH_AS(evaluate_full(single_view(g), program_for(Algo::Viterbi), 0),
                       doctest::Contains("weights >= 1"), Error);
}

TEST_CASE("tiny budget raises non-convergence") {
  CsrGraph g = csr_of({{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}}, 4);
  EngineConfig config;
  config.max_edge_applications = 1;
  CHECK_THROWS_AS(evaluate_full(single_view(g), program_for(Algo::Bfs), 0, config),
                  Error);
}

TEST_CASE("fixed points match independent oracles on random graphs") {
  std::mt19937_64 rng(3);
  for (int iter = 0; iter < 6; ++iter) {
    EdgeSet edges = random_edge_set(200, 700, rng);
    CsrGraph g = CsrGraph::from_edge_set(edges, 200);
    for (Algo algo : kAllAlgos) {
      const VertexProgram& prog = program_for(algo);
      VertexValues vals = evaluate_full(single_view(g), prog, 0);
      CHECK(oracles::values_match(prog, vals.values,
                                  oracles::relaxation_fixed_point(edges, 200, prog, 0)));
    }
  }
}

TEST_CASE("fixed points match exhaustive path enumeration on tiny graphs") {
  std::mt19937_64 rng(9);
  for (int iter = 0; iter < 10; ++iter) {
    EdgeSet edges = random_edge_set(7, 14, rng);
    CsrGraph g = CsrGraph::from_edge_set(edges, 7);
    for (Algo algo : kAllAlgos) {
      const VertexProgram& prog = program_for(algo);
      VertexValues vals = evaluate_full(single_view(g), prog, 0);
      CHECK(oracles::values_match(
          prog, vals.values, oracles::path_enumeration_fixed_point(edges, 7, prog, 0)));
    }
  }
}

TEST_CASE("synchronous and asynchronous drains agree") {
  std::mt19937_64 rng(15);
  EdgeSet edges = random_edge_set(150, 600, rng);
  CsrGraph g = CsrGraph::from_edge_set(edges, 150);
  for (Algo algo : kAllAlgos) {
    const VertexProgram& prog = program_for(algo);
    EngineConfig sync_cfg;
    sync_cfg.force_mode = 0;
    EngineConfig async_cfg;
    async_cfg.force_mode = 1;
    VertexValues sync_vals = evaluate_full(single_view(g), prog, 0, sync_cfg);
    VertexValues async_vals = evaluate_full(single_view(g), prog, 0, async_cfg);
    CHECK(sync_vals.values == async_vals.values);
  }
}

TEST_CASE("incremental addition: trivial cases") {
  CsrGraph g = csr_of({{0, 1, 1.0}}, 3);
  const VertexProgram& bfs = program_for(Algo::Bfs);
  VertexValues vals = evaluate_full(single_view(g), bfs, 0);
  CHECK(vals.values == std::vector<double>{0.0, 1.0, kInf});

  SUBCASE("empty batch is the identity") {
    CsrGraph empty = CsrGraph::from_edge_set(EdgeSet{}, 3);
    DrainStats stats;
    incremental_add(vals, single_view(g), empty, bfs, {}, &stats);
    CHECK(vals.values == std::vector<double>{0.0, 1.0, kInf});
    CHECK(stats.improvements == 0);
  }
  SUBCASE("one new edge extends the fixed point") {
    CsrGraph batch = csr_of({{1, 2, 1.0}}, 3);
    incremental_add(vals, single_view(g), batch, bfs);
    CHECK(vals.values == std::vector<double>{0.0, 1.0, 2.0});
  }
  SUBCASE("overlapping batch is rejected") {
    CsrGraph overlap = csr_of({{0, 1, 5.0}}, 3);
    CHECK_THROWS_AS(incremental_add(vals, single_view(g), overlap, bfs), Error);
  }
}

TEST_CASE("incremental addition equals from-scratch on the composed graph") {
  std::mt19937_64 rng(21);
  for (int iter = 0; iter < 4; ++iter) {
    EdgeSet all = random_edge_set(120, 500, rng);
    // Split into a base view and two successive batches.
    std::vector<Edge> shuffled(all.begin(), all.end());
    for (std::size_t i = shuffled.size(); i > 1; --i) {
      std::swap(shuffled[i - 1], shuffled[bounded_uniform(rng, i)]);
    }
    EdgeSet base_edges = EdgeSet::from_edges(
        std::vector<Edge>(shuffled.begin(), shuffled.begin() + 300));
    EdgeSet batch1 = EdgeSet::from_edges(
        std::vector<Edge>(shuffled.begin() + 300, shuffled.begin() + 420));
    EdgeSet batch2 = EdgeSet::from_edges(
        std::vector<Edge>(shuffled.begin() + 420, shuffled.end()));

    CsrGraph base = CsrGraph::from_edge_set(base_edges, 120);
    CsrGraph overlay1 = CsrGraph::from_edge_set(batch1, 120);
    CsrGraph overlay2 = CsrGraph::from_edge_set(batch2, 120);

    for (Algo algo : kAllAlgos) {
      const VertexProgram& prog = program_for(algo);
      DrainStats stats;
      VertexValues vals = evaluate_full(single_view(base), prog, 0);
      incremental_add(vals, single_view(base), overlay1, prog, {}, &stats);
      CHECK(stats.edge_applications >= overlay1.edge_count());

      ComposedGraphView with_one = ComposedGraphView::compose(base, {&overlay1});
      incremental_add(vals, with_one, overlay2, prog);

      CsrGraph whole = CsrGraph::from_edge_set(all, 120);
      VertexValues expect = evaluate_full(single_view(whole), prog, 0);
      CHECK(vals.values == expect.values);
    }
  }
}

TEST_CASE("schedule execution reproduces every snapshot") {
  EvolvingGraphStore store = fixtures::make_example_store();
  const Interval window{0, 2};
  for (Algo algo : kAllAlgos) {
    const VertexProgram& prog = program_for(algo);
    EvaluationSchedule ws = bypass_merge(
        solve_steiner(TriangularGrid::build(store, window)));
    RunResult shared = run_schedule(store, ws, prog, 0);
    RunResult direct = run_schedule(store, direct_hop_schedule(store, window), prog, 0);
    CHECK(shared.mutation_free_verified);
    CHECK(direct.mutation_free_verified);
    for (int t = 0; t <= 2; ++t) {
      CsrGraph snap = CsrGraph::from_edge_set(store.get_version(t), store.vertex_count());
      VertexValues expect = evaluate_full(single_view(snap), prog, 0);
      CHECK(shared.values_for(t).values == expect.values);
      CHECK(direct.values_for(t).values == expect.values);
    }
    // Composed engines never spend time on deletions or mutation.
    for (const BreakdownRow& row : shared.rows) {
      CHECK(row.incr_del_ms == 0.0);
      CHECK(row.mutation_ms == 0.0);
    }
  }
}

TEST_CASE("single-snapshot schedule is a from-scratch evaluation") {
  EvolvingGraphStore store = fixtures::make_example_store();
  RunResult run = run_schedule(store, direct_hop_schedule(store, Interval{1, 1}),
                               program_for(Algo::Sssp), 0);
  CsrGraph snap = CsrGraph::from_edge_set(store.get_version(1), store.vertex_count());
  CHECK(run.values_for(1).values ==
        evaluate_full(single_view(snap), program_for(Algo::Sssp), 0).values);
}

TEST_CASE("engines agree for every window size and both drain modes") {
  std::mt19937_64 rng(55);
  EvolvingGraphStore store(random_edge_set(100, 360, rng), 100);
  generate_batches(store, 11, 30, 0.5, 19);
  const VertexProgram& prog = program_for(Algo::Sssp);

  for (int m = 1; m <= 12; ++m) {
    const Interval window{0, m - 1};
    std::vector<VertexValues> oracle;
    for (int t = 0; t < m; ++t) {
      CsrGraph g = CsrGraph::from_edge_set(store.get_version(t), 100);
      oracle.push_back(evaluate_full(single_view(g), prog, 0));
    }
    for (int mode : {0, 1}) {
      EngineConfig config;
      config.force_mode = mode;
      RunResult baseline = run_baseline(store, window, prog, 0, config);
      RunResult direct =
          run_schedule(store, direct_hop_schedule(store, window), prog, 0, config);
      RunResult shared = run_schedule(
          store, bypass_merge(solve_steiner(TriangularGrid::build(store, window))),
          prog, 0, config);
      for (int t = 0; t < m; ++t) {
        CHECK(baseline.values_for(t).values == oracle[static_cast<std::size_t>(t)].values);
        CHECK(direct.values_for(t).values == oracle[static_cast<std::size_t>(t)].values);
        CHECK(shared.values_for(t).values == oracle[static_cast<std::size_t>(t)].values);
      }
    }
  }
}

TEST_CASE("parallel subtree execution matches sequential") {
  std::mt19937_64 rng(33);
  EvolvingGraphStore store(random_edge_set(100, 400, rng), 100);
  generate_batches(store, 6, 40, 0.5, 7);
  const Interval window{0, 6};
  EvaluationSchedule schedule = bypass_merge(
      solve_steiner(TriangularGrid::build(store, window)));

  EngineConfig sequential;
  EngineConfig parallel;
  parallel.threads = 4;
  for (Algo algo : {Algo::Bfs, Algo::Viterbi}) {
    const VertexProgram& prog = program_for(algo);
    RunResult a = run_schedule(store, schedule, prog, 0, sequential);
    RunResult b = run_schedule(store, schedule, prog, 0, parallel);
    REQUIRE(a.snapshots == b.snapshots);
    for (std::size_t i = 0; i < a.values.size(); ++i) {
      CHECK(a.values[i].values == b.values[i].values);
    }
    CHECK(b.mutation_free_verified);
  }
}
