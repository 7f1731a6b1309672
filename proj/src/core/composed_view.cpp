// Copyright (c) evograph contributors.
// SPDX-License-Identifier: Apache-2.0
#include "core/composed_view.hpp"

#include <string>

#include "core/errors.hpp"

namespace evograph {

namespace {

void check_disjoint(const CsrGraph& base,
                    const std::vector<const CsrGraph*>& prior,
                    const CsrGraph& candidate) {
  if (candidate.vertex_count() != base.vertex_count()) {
    raise(ErrorCode::InvalidArgument,
          "overlay vertex count " + std::to_string(candidate.vertex_count()) +
              " differs from base " + std::to_string(base.vertex_count()));
  }
  candidate.for_each_edge([&](VertexId src, VertexId dst, double) {
    if (base.has_edge(src, dst)) {
      raise(ErrorCode::Overlap, "edge (" + std::to_string(src) + ", " +
                                    std::to_string(dst) +
                                    ") already present in base");
    }
    for (const CsrGraph* p : prior) {
      if (p->has_edge(src, dst)) {
        raise(ErrorCode::Overlap, "edge (" + std::to_string(src) + ", " +
                                      std::to_string(dst) +
                                      ") already present in an earlier overlay");
      }
    }
  });
}

}  // namespace

ComposedGraphView ComposedGraphView::compose(const CsrGraph& base,
                                             std::vector<const CsrGraph*> overlays) {
  std::vector<const CsrGraph*> accepted;
  accepted.reserve(overlays.size());
  for (const CsrGraph* o : overlays) {
    check_disjoint(base, accepted, *o);
    accepted.push_back(o);
  }
  return ComposedGraphView(&base, std::move(accepted));
}

ComposedGraphView ComposedGraphView::extended(const CsrGraph& extra) const {
  check_disjoint(*base_, overlays_, extra);
  std::vector<const CsrGraph*> overlays = overlays_;
  overlays.push_back(&extra);
  return ComposedGraphView(base_, std::move(overlays));
}

}  // namespace evograph
