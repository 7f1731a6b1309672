// Copyright (c) evograph contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace evograph {

enum class ErrorCode {
  InvalidArgument,
  DuplicateEdge,
  VertexOutOfRange,
  Overlap,
  DeleteMissingEdge,
  AddExistingEdge,
  UnknownSnapshot,
  NotAdjacent,
  InsufficientEdges,
  NonConvergence,
  Parse,
  Io,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, std::string message) {
  throw Error(code, std::move(message));
}

}  // namespace evograph
