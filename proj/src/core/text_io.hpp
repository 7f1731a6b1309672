// Copyright (c) evograph contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace evograph {

// Shortest round-trip decimal form ("1", "2.5", "0.1"); "inf" for +infinity.
std::string format_double(double value);
void append_double(std::string& out, double value);

// Strict full-token parsers; raise Parse with `context` on failure.
double parse_double(std::string_view token, const std::string& context);
std::uint32_t parse_u32(std::string_view token, const std::string& context);
std::int64_t parse_i64(std::string_view token, const std::string& context);

}  // namespace evograph
