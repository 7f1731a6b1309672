// Copyright (c) evograph contributors.
// SPDX-License-Identifier: Apache-2.0
#include "core/csr.hpp"

#include <algorithm>
#include <cstring>
#include <string>

#include "core/errors.hpp"

namespace evograph {

CsrGraph CsrGraph::from_edge_set(const EdgeSet& edges, std::uint32_t vertex_count) {
  CsrGraph g;
  g.vertex_count_ = vertex_count;
  g.offsets_.assign(static_cast<std::size_t>(vertex_count) + 1, 0);
  g.targets_.reserve(edges.size());
  g.weights_.reserve(edges.size());

  for (const Edge& e : edges) {
    if (e.src >= vertex_count || e.dst >= vertex_count) {
      raise(ErrorCode::VertexOutOfRange,
            "edge (" + std::to_string(e.src) + ", " + std::to_string(e.dst) +
                ") outside vertex range [0, " + std::to_string(vertex_count) + ")");
    }
  }
  for (const Edge& e : edges) g.offsets_[e.src + 1]++;
  for (std::size_t v = 0; v < vertex_count; ++v) g.offsets_[v + 1] += g.offsets_[v];

  // EdgeSet iterates sorted by (src, dst), so a single append pass yields
  // canonical per-vertex ordering.
  for (const Edge& e : edges) {
    g.targets_.push_back(e.dst);
    g.weights_.push_back(e.weight);
  }
  return g;
}

bool CsrGraph::has_edge(VertexId src, VertexId dst) const {
  if (src >= vertex_count_) return false;
  auto first = targets_.begin() + static_cast<std::ptrdiff_t>(offsets_[src]);
  auto last = targets_.begin() + static_cast<std::ptrdiff_t>(offsets_[src + 1]);
  auto it = std::lower_bound(first, last, dst);
  return it != last && *it == dst;
}

EdgeSet CsrGraph::to_edge_set() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for_each_edge([&](VertexId src, VertexId dst, double w) {
    out.push_back(Edge{src, dst, w});
  });
  return EdgeSet::from_sorted_unique(std::move(out));
}

namespace {

inline void fnv1a(std::uint64_t& h, const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
}

}  // namespace

std::uint64_t CsrGraph::checksum() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  fnv1a(h, &vertex_count_, sizeof(vertex_count_));
  fnv1a(h, offsets_.data(), offsets_.size() * sizeof(std::uint64_t));
  fnv1a(h, targets_.data(), targets_.size() * sizeof(VertexId));
  fnv1a(h, weights_.data(), weights_.size() * sizeof(double));
  return h;
}

}  // namespace evograph
