// Copyright (c) evograph contributors.
// SPDX-License-Identifier: Apache-2.0
#include "core/generate.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>
#include <vector>

#include "core/errors.hpp"

namespace evograph {

namespace {

inline std::uint64_t pair_key(VertexId src, VertexId dst) {
  return (static_cast<std::uint64_t>(src) << 32) | dst;
}

// Integer weight in [1, 100] derived from the endpoints alone, so an edge
// that is deleted and later re-added comes back with the same weight and
// snapshot diffs stay exact.
inline double pair_weight(VertexId src, VertexId dst) {
  std::uint64_t h = pair_key(src, dst) * 0x9e3779b97f4a7c15ULL;
  h ^= h >> 29;
  return 1.0 + static_cast<double>(h % 100);
}

constexpr std::size_t kMaxSampleAttempts = 1u << 26;

}  // namespace

std::uint64_t bounded_uniform(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t threshold = n == 0 ? 0 : (0 - n) % n;  // 2^64 mod n
  while (true) {
    const std::uint64_t x = rng();
    if (x >= threshold) return x % n;
  }
}

EdgeSet random_edge_set(std::uint32_t vertex_count, std::size_t count,
                        std::mt19937_64& rng) {
  if (vertex_count < 2 && count > 0) {
    raise(ErrorCode::InsufficientEdges, "vertex range too small to sample edges");
  }
  std::unordered_set<std::uint64_t> chosen;
  std::vector<Edge> edges;
  edges.reserve(count);
  std::size_t attempts = 0;
  while (edges.size() < count) {
    if (++attempts > kMaxSampleAttempts) {
      raise(ErrorCode::InsufficientEdges, "edge sampling failed to converge");
    }
    const auto src = static_cast<VertexId>(bounded_uniform(rng, vertex_count));
    const auto dst = static_cast<VertexId>(bounded_uniform(rng, vertex_count));
    if (src == dst) continue;
    if (!chosen.insert(pair_key(src, dst)).second) continue;
    edges.push_back(Edge{src, dst, pair_weight(src, dst)});
  }
  return EdgeSet::from_edges(std::move(edges));
}

void generate_batches(EvolvingGraphStore& store, int count, int batch_size,
                      double add_fraction, std::uint64_t seed) {
  if (count < 0 || batch_size < 0 || add_fraction < 0.0 || add_fraction > 1.0) {
    raise(ErrorCode::InvalidArgument, "invalid batch generation parameters");
  }
  const std::uint32_t n = store.vertex_count();
  std::mt19937_64 rng(seed);

  // Present-edge pool for the latest snapshot, kept in deterministic order.
  EdgeSet current = store.get_version(store.snapshot_count() - 1);
  std::vector<Edge> pool(current.begin(), current.end());
  std::unordered_set<std::uint64_t> present;
  present.reserve(pool.size() * 2);
  for (const Edge& e : pool) present.insert(pair_key(e.src, e.dst));

  const auto n_add = static_cast<std::size_t>(
      std::llround(add_fraction * static_cast<double>(batch_size)));
  const std::size_t n_del = static_cast<std::size_t>(batch_size) - n_add;

  for (int b = 0; b < count; ++b) {
    if (n_del > pool.size()) {
      raise(ErrorCode::InsufficientEdges,
            "batch " + std::to_string(b) + " needs " + std::to_string(n_del) +
                " deletions but only " + std::to_string(pool.size()) +
                " edges are present");
    }
    const std::uint64_t absent_pairs =
        static_cast<std::uint64_t>(n) * (n - 1) - present.size();
    if (n_add > absent_pairs) {
      raise(ErrorCode::InsufficientEdges,
            "batch " + std::to_string(b) + " needs " + std::to_string(n_add) +
                " additions but only " + std::to_string(absent_pairs) +
                " vertex pairs are absent");
    }

    // Deletions: partial Fisher-Yates over the pool.
    std::vector<Edge> dels;
    dels.reserve(n_del);
    for (std::size_t i = 0; i < n_del; ++i) {
      const std::size_t j =
          i + static_cast<std::size_t>(bounded_uniform(rng, pool.size() - i));
      std::swap(pool[i], pool[j]);
      dels.push_back(pool[i]);
    }
    pool.erase(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n_del));
    for (const Edge& e : dels) present.erase(pair_key(e.src, e.dst));

    // Additions: rejection sampling over pairs absent from the previous
    // snapshot. Pairs deleted by this batch stay excluded: one batch may not
    // touch the same (src, dst) twice.
    std::vector<Edge> adds;
    adds.reserve(n_add);
    std::unordered_set<std::uint64_t> batch_adds;
    std::unordered_set<std::uint64_t> batch_dels;
    for (const Edge& e : dels) batch_dels.insert(pair_key(e.src, e.dst));
    std::size_t attempts = 0;
    while (adds.size() < n_add) {
      if (++attempts > kMaxSampleAttempts) {
        raise(ErrorCode::InsufficientEdges, "addition sampling failed to converge");
      }
      const auto src = static_cast<VertexId>(bounded_uniform(rng, n));
      const auto dst = static_cast<VertexId>(bounded_uniform(rng, n));
      if (src == dst) continue;
      const std::uint64_t key = pair_key(src, dst);
      if (present.contains(key) || batch_adds.contains(key) || batch_dels.contains(key)) {
        continue;
      }
      adds.push_back(Edge{src, dst, pair_weight(src, dst)});
      batch_adds.insert(key);
    }

    store.new_version(DeltaBatch{EdgeSet::from_edges(adds),
                                 EdgeSet::from_edges(dels)});
    for (const Edge& e : adds) {
      present.insert(pair_key(e.src, e.dst));
      pool.push_back(e);
    }
  }
}

}  // namespace evograph
