// Copyright (c) evograph contributors.
// SPDX-License-Identifier: Apache-2.0
#include "core/text_io.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "core/errors.hpp"

namespace evograph {

std::string format_double(double value) {
  std::string out;
  append_double(out, value);
  return out;
}

void append_double(std::string& out, double value) {
  if (std::isinf(value)) {
    out += value > 0 ? "inf" : "-inf";
    return;
  }
  char buf[48];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  out.append(buf, res.ptr);
}

double parse_double(std::string_view token, const std::string& context) {
  if (token == "inf") return std::numeric_limits<double>::infinity();
  double value = 0.0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
    raise(ErrorCode::Parse, context + ": invalid number '" + std::string(token) + "'");
  }
  return value;
}

std::uint32_t parse_u32(std::string_view token, const std::string& context) {
  std::uint32_t value = 0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
    raise(ErrorCode::Parse, context + ": invalid non-negative integer '" + std::string(token) + "'");
  }
  return value;
}

std::int64_t parse_i64(std::string_view token, const std::string& context) {
  std::int64_t value = 0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
    raise(ErrorCode::Parse, context + ": invalid integer '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace evograph
