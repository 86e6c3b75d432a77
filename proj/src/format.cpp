// Copyright 2026 The toa-firstclick Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "toa/format.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace toa {

std::string format_shortest(double value) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), end);
}

std::string format_significant(double value, int digits) {
    if (value == 0.0) {
        // Avoid "-0" in output files.
        value = 0.0;
    }
    std::array<char, 64> buf{};
    const int len = std::snprintf(buf.data(), buf.size(), "%.*g", digits, value);
    return std::string(buf.data(), static_cast<std::size_t>(len));
}

namespace {

std::optional<double> parse_plain(std::string_view text) {
    if (text.empty()) {
        return std::nullopt;
    }
    // from_chars rejects a leading '+'.
    if (text.front() == '+') {
        text.remove_prefix(1);
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

}  // namespace

std::optional<double> parse_number(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return parse_plain(text);
    }
    auto num = parse_plain(text.substr(0, slash));
    auto den = parse_plain(text.substr(slash + 1));
    if (!num || !den || *den == 0.0) {
        return std::nullopt;
    }
    return *num / *den;
}

}  // namespace toa
