// Copyright 2026 The stablewalk Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace stablewalk {

/// Shortest round-trip decimal form of a double.
std::string format_double(double value);

/// Strict parse of the whole string; throws ValidationError naming `what`.
double parse_double(std::string_view text, std::string_view what);
std::uint64_t parse_count(std::string_view text, std::string_view what);

std::string_view trim(std::string_view text);
std::vector<std::string_view> split(std::string_view text, char sep);

}  // namespace stablewalk
