// Copyright (c) evograph contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "core/csr.hpp"

namespace evograph {

/// A read-only overlay composition: a base graph plus addition-only delta
/// batches, each already in CSR form. Every physical edge appears in exactly
/// one component, so out-neighbor iteration is the disjoint union of the
/// component adjacencies. The view never writes to any component.
class ComposedGraphView {
public:
  // Validates that overlays are pairwise disjoint and disjoint from base;
  // raises Overlap naming the first duplicated (src, dst).
  static ComposedGraphView compose(const CsrGraph& base,
                                   std::vector<const CsrGraph*> overlays);

  // This view plus one more overlay; only `extra` is re-validated.
  ComposedGraphView extended(const CsrGraph& extra) const;

  std::uint32_t vertex_count() const { return base_->vertex_count(); }

  std::size_t edge_count() const {
    std::size_t n = base_->edge_count();
    for (const CsrGraph* o : overlays_) n += o->edge_count();
    return n;
  }

  template <class Fn>
  void for_each_out(VertexId v, Fn&& fn) const {
    base_->for_each_out(v, fn);
    for (const CsrGraph* o : overlays_) o->for_each_out(v, fn);
  }

  template <class Fn>
  void for_each_edge(Fn&& fn) const {
    base_->for_each_edge(fn);
    for (const CsrGraph* o : overlays_) o->for_each_edge(fn);
  }

  bool has_edge(VertexId src, VertexId dst) const {
    if (base_->has_edge(src, dst)) return true;
    for (const CsrGraph* o : overlays_) {
      if (o->has_edge(src, dst)) return true;
    }
    return false;
  }

  const CsrGraph& base() const { return *base_; }
  const std::vector<const CsrGraph*>& overlays() const { return overlays_; }

private:
  ComposedGraphView(const CsrGraph* base, std::vector<const CsrGraph*> overlays)
      : base_(base), overlays_(std::move(overlays)) {}

  const CsrGraph* base_;
  std::vector<const CsrGraph*> overlays_;
};

}  // namespace evograph
