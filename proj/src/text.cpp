// Copyright 2026 The stablewalk Authors
// SPDX-License-Identifier: Apache-2.0
#include "stablewalk/text.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "stablewalk/errors.hpp"

namespace stablewalk {

std::string format_double(double value) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), end);
}

double parse_double(std::string_view text, std::string_view what) {
    text = trim(text);
    double value = 0.0;
    // from_chars rejects a leading '+'; accept it for hand-written configs.
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw ValidationError(std::string(what) + ": not a finite number: '" + std::string(text) + "'");
    }
    return value;
}

std::uint64_t parse_count(std::string_view text, std::string_view what) {
    text = trim(text);
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec == std::errc{} && ptr == text.data() + text.size() && !text.empty()) return value;
    // Allow integral values written in scientific notation such as 1e7.
    const double d = parse_double(text, what);
    if (d < 0.0 || d != std::floor(d) || d > 1.8e19) {
        throw ValidationError(std::string(what) + ": not a non-negative integer: '" + std::string(text) + "'");
    }
    return static_cast<std::uint64_t>(d);
}

std::string_view trim(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = text.find_last_not_of(" \t\r\n");
    return text.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (;;) {
        const auto pos = text.find(sep, start);
        if (pos == std::string_view::npos) {
            parts.push_back(text.substr(start));
            return parts;
        }
        parts.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

}  // namespace stablewalk
