// Copyright (c) evograph contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "core/edge_set.hpp"

namespace evograph {

/// Immutable compressed sparse row adjacency of a directed weighted graph.
/// Canonical form: per-vertex neighbor lists sorted by destination, which
/// makes membership a binary search and byte checksums reproducible.
class CsrGraph {
public:
  CsrGraph() = default;

  // Raises VertexOutOfRange if an endpoint is >= vertex_count.
  static CsrGraph from_edge_set(const EdgeSet& edges, std::uint32_t vertex_count);

  std::uint32_t vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return targets_.size(); }

  std::uint32_t out_degree(VertexId v) const {
    return static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]);
  }

  template <class Fn>
  void for_each_out(VertexId v, Fn&& fn) const {
    for (std::uint64_t i = offsets_[v]; i < offsets_[v + 1]; ++i) {
      fn(targets_[i], weights_[i]);
    }
  }

  template <class Fn>
  void for_each_edge(Fn&& fn) const {
    for (VertexId v = 0; v < vertex_count_; ++v) {
      for (std::uint64_t i = offsets_[v]; i < offsets_[v + 1]; ++i) {
        fn(v, targets_[i], weights_[i]);
      }
    }
  }

  bool has_edge(VertexId src, VertexId dst) const;

  EdgeSet to_edge_set() const;

  // FNV-1a over vertex count and the raw offset/target/weight bytes.
  std::uint64_t checksum() const;

  const std::vector<std::uint64_t>& offsets() const { return offsets_; }
  const std::vector<VertexId>& targets() const { return targets_; }
  const std::vector<double>& weights() const { return weights_; }

private:
  std::uint32_t vertex_count_ = 0;
  std::vector<std::uint64_t> offsets_{0};
  std::vector<VertexId> targets_;
  std::vector<double> weights_;
};

}  // namespace evograph
