// Copyright (c) evograph contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <limits>
#include <optional>
#include <string_view>

namespace evograph {

enum class Algo { Bfs, Sssp, Sswp, Ssnp, Viterbi };

inline constexpr std::array<Algo, 5> kAllAlgos = {
    Algo::Bfs, Algo::Sssp, Algo::Sswp, Algo::Ssnp, Algo::Viterbi};

/// A monotone vertex program: an edge function producing a candidate value
/// for the destination from the source value, and a strict improvement order
/// (min or max). Updates follow compare-and-improve semantics, so any drain
/// order reaches the same fixed point.
struct VertexProgram {
  Algo algo = Algo::Bfs;
  std::string_view name = "bfs";
  double identity_value = std::numeric_limits<double>::infinity();
  double source_value = 0.0;
  bool maximizing = false;
  // Viterbi diverges on weights below 1 (a gain cycle has no fixed point).
  bool requires_unit_weights = false;

  double edge_function(double val_u, double weight) const {
    switch (algo) {
      case Algo::Bfs:
        return val_u + 1.0;
      case Algo::Sssp:
        return val_u + weight;
      case Algo::Sswp:
        return val_u < weight ? val_u : weight;
      case Algo::Ssnp:
        return val_u > weight ? val_u : weight;
      case Algo::Viterbi:
        return val_u / weight;
    }
    return identity_value;
  }

  bool improves(double candidate, double current) const {
    return maximizing ? candidate > current : candidate < current;
  }
};

const VertexProgram& program_for(Algo algo);
std::optional<Algo> algo_from_name(std::string_view name);
std::string_view algo_name(Algo algo);

}  // namespace evograph
