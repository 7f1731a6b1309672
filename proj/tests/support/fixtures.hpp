// Copyright (c) evograph contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Shared fixture: a three-snapshot store with re-added edges, small enough
// to check every interval label by hand. Edges carry stable numbers 1..29 so
// expectations can name them; the number determines the (src, dst) pair.
#pragma once

#include <initializer_list>
#include <vector>

#include "core/store.hpp"

namespace fixtures {

using evograph::DeltaBatch;
using evograph::Edge;
using evograph::EdgeSet;
using evograph::EvolvingGraphStore;
using evograph::VertexId;

inline constexpr std::uint32_t kExampleVertexCount = 12;

// Numbered edges enumerate the off-diagonal pairs of a 12-vertex graph in
// lexicographic order: 1..11 from vertex 0, 12..22 from vertex 1, 23..29
// from vertex 2.
inline Edge numbered_edge(int k) {
  static const std::vector<std::pair<VertexId, VertexId>> pairs = [] {
    std::vector<std::pair<VertexId, VertexId>> out;
    for (VertexId src = 0; src < 3; ++src) {
      for (VertexId dst = 0; dst < kExampleVertexCount; ++dst) {
        if (dst != src) out.emplace_back(src, dst);
      }
    }
    return out;
  }();
  const auto& [src, dst] = pairs.at(static_cast<std::size_t>(k - 1));
  return Edge{src, dst, 1.0 + k % 5};
}

inline EdgeSet numbered_edges(std::initializer_list<int> ks) {
  std::vector<Edge> edges;
  for (int k : ks) edges.push_back(numbered_edge(k));
  return EdgeSet::from_edges(std::move(edges));
}

// Edges present in all three snapshots.
inline EdgeSet example_common_edges() {
  return numbered_edges({1, 2, 5, 6, 8, 13, 17, 18, 19, 20, 21, 22, 25, 27, 28});
}

inline DeltaBatch example_transition(int idx) {
  if (idx == 0) {
    return DeltaBatch{numbered_edges({3, 12, 15}), numbered_edges({9, 11, 16, 23, 29})};
  }
  return DeltaBatch{numbered_edges({9, 11, 14, 24, 29}), numbered_edges({3, 4, 7, 10, 26})};
}

// Snapshot 0 holds the common edges plus the two groups that later leave:
// {4,7,10,26} go at the second transition, {9,11,16,23,29} at the first
// (with 9, 11 and 29 coming back afterwards).
inline EvolvingGraphStore make_example_store() {
  EdgeSet base = example_common_edges()
                     .unite(numbered_edges({4, 7, 10, 26}))
                     .unite(numbered_edges({9, 11, 16, 23, 29}));
  EvolvingGraphStore store(std::move(base), kExampleVertexCount);
  store.new_version(example_transition(0));
  store.new_version(example_transition(1));
  return store;
}

}  // namespace fixtures
