// Copyright (c) evograph contributors.
// SPDX-License-Identifier: Apache-2.0
#include "core/edge_set.hpp"

#include <algorithm>
#include <string>

#include "core/errors.hpp"

namespace evograph {

EdgeSet EdgeSet::from_edges(std::vector<Edge> edges) {
  std::sort(edges.begin(), edges.end(), edge_key_less);
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edge_key_equal(edges[i - 1], edges[i])) {
      raise(ErrorCode::DuplicateEdge,
            "duplicate edge (" + std::to_string(edges[i].src) + ", " +
                std::to_string(edges[i].dst) + ")");
    }
  }
  EdgeSet set;
  set.edges_ = std::move(edges);
  return set;
}

EdgeSet EdgeSet::from_sorted_unique(std::vector<Edge> edges) {
  EdgeSet set;
  set.edges_ = std::move(edges);
  return set;
}

bool EdgeSet::contains(VertexId src, VertexId dst) const {
  return find(src, dst) != nullptr;
}

const Edge* EdgeSet::find(VertexId src, VertexId dst) const {
  Edge probe{src, dst, 0.0};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), probe, edge_key_less);
  if (it != edges_.end() && it->src == src && it->dst == dst) return &*it;
  return nullptr;
}

EdgeSet EdgeSet::unite(const EdgeSet& other) const {
  std::vector<Edge> out;
  out.reserve(edges_.size() + other.edges_.size());
  auto a = edges_.begin();
  auto b = other.edges_.begin();
  while (a != edges_.end() && b != other.edges_.end()) {
    if (edge_key_less(*a, *b)) {
      out.push_back(*a++);
    } else if (edge_key_less(*b, *a)) {
      out.push_back(*b++);
    } else {
      out.push_back(*a++);  // left weight wins
      ++b;
    }
  }
  out.insert(out.end(), a, edges_.end());
  out.insert(out.end(), b, other.edges_.end());
  return from_sorted_unique(std::move(out));
}

EdgeSet EdgeSet::subtract(const EdgeSet& other) const {
  std::vector<Edge> out;
  auto a = edges_.begin();
  auto b = other.edges_.begin();
  while (a != edges_.end()) {
    while (b != other.edges_.end() && edge_key_less(*b, *a)) ++b;
    if (b == other.edges_.end() || !edge_key_equal(*a, *b)) {
      out.push_back(*a);
    }
    ++a;
  }
  return from_sorted_unique(std::move(out));
}

EdgeSet EdgeSet::intersect(const EdgeSet& other) const {
  std::vector<Edge> out;
  auto a = edges_.begin();
  auto b = other.edges_.begin();
  while (a != edges_.end() && b != other.edges_.end()) {
    if (edge_key_less(*a, *b)) {
      ++a;
    } else if (edge_key_less(*b, *a)) {
      ++b;
    } else {
      out.push_back(*a);  // left weight wins
      ++a;
      ++b;
    }
  }
  return from_sorted_unique(std::move(out));
}

bool EdgeSet::keys_equal(const EdgeSet& other) const {
  if (edges_.size() != other.edges_.size()) return false;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (!edge_key_equal(edges_[i], other.edges_[i])) return false;
  }
  return true;
}

bool EdgeSet::is_subset_of(const EdgeSet& other) const {
  auto b = other.edges_.begin();
  for (const Edge& e : edges_) {
    while (b != other.edges_.end() && edge_key_less(*b, e)) ++b;
    if (b == other.edges_.end() || !edge_key_equal(*b, e)) return false;
  }
  return true;
}

}  // namespace evograph
