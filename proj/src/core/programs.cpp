// Copyright (c) evograph contributors.
// SPDX-License-Identifier: Apache-2.0
#include "core/programs.hpp"

namespace evograph {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Hop count: CASMIN(Val(v), Val(u) + 1).
constexpr VertexProgram kBfs{Algo::Bfs, "bfs", kInf, 0.0, false, false};
// Path length: CASMIN(Val(v), Val(u) + wt).
constexpr VertexProgram kSssp{Algo::Sssp, "sssp", kInf, 0.0, false, false};
// Widest path: CASMAX(Val(v), min(Val(u), wt)).
constexpr VertexProgram kSswp{Algo::Sswp, "sswp", 0.0, kInf, true, false};
// Narrowest path: CASMIN(Val(v), max(Val(u), wt)).
constexpr VertexProgram kSsnp{Algo::Ssnp, "ssnp", kInf, 0.0, false, false};
// Path probability: CASMAX(Val(v), Val(u) / wt), weights >= 1.
constexpr VertexProgram kViterbi{Algo::Viterbi, "viterbi", 0.0, 1.0, true, true};

}  // namespace

const VertexProgram& program_for(Algo algo) {
  switch (algo) {
    case Algo::Bfs:
      return kBfs;
    case Algo::Sssp:
      return kSssp;
    case Algo::Sswp:
      return kSswp;
    case Algo::Ssnp:
      return kSsnp;
    case Algo::Viterbi:
      return kViterbi;
  }
  return kBfs;
}

std::optional<Algo> algo_from_name(std::string_view name) {
  for (Algo algo : kAllAlgos) {
    if (program_for(algo).name == name) return algo;
  }
  return std::nullopt;
}

std::string_view algo_name(Algo algo) { return program_for(algo).name; }

}  // namespace evograph
