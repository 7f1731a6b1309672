// Copyright (c) evograph contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace evograph {

using VertexId = std::uint32_t;

struct Edge {
  VertexId src = 0;
  VertexId dst = 0;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

inline bool edge_key_less(const Edge& a, const Edge& b) {
  return a.src != b.src ? a.src < b.src : a.dst < b.dst;
}

inline bool edge_key_equal(const Edge& a, const Edge& b) {
  return a.src == b.src && a.dst == b.dst;
}

/// A set of directed edges keyed by (src, dst). Weights ride along with the
/// edges and are ignored by every set operation. Storage is sorted by key so
/// iteration order is deterministic.
class EdgeSet {
public:
  using const_iterator = std::vector<Edge>::const_iterator;

  EdgeSet() = default;

  // Sorts and validates; raises DuplicateEdge on a repeated (src, dst).
  static EdgeSet from_edges(std::vector<Edge> edges);
  // Caller guarantees sorted-by-key and unique.
  static EdgeSet from_sorted_unique(std::vector<Edge> edges);

  std::size_t size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }
  const_iterator begin() const { return edges_.begin(); }
  const_iterator end() const { return edges_.end(); }
  const Edge& operator[](std::size_t i) const { return edges_[i]; }
  const std::vector<Edge>& edges() const { return edges_; }

  bool contains(VertexId src, VertexId dst) const;
  const Edge* find(VertexId src, VertexId dst) const;

  // Set algebra by (src, dst); `unite` keeps the left weight on a common key.
  EdgeSet unite(const EdgeSet& other) const;
  EdgeSet subtract(const EdgeSet& other) const;
  EdgeSet intersect(const EdgeSet& other) const;

  bool keys_equal(const EdgeSet& other) const;
  bool is_subset_of(const EdgeSet& other) const;

  friend bool operator==(const EdgeSet&, const EdgeSet&) = default;

private:
  std::vector<Edge> edges_;
};

}  // namespace evograph
