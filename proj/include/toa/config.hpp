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

#ifndef TOA_CONFIG_HPP
#define TOA_CONFIG_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "toa/scenarios.hpp"

namespace toa {

/// A scenario plus output switches.
///
/// Text format: '#' comment lines, blank lines, section headers and
/// "key = value" lines.
///
///   [run]        name, engines, delta_t, time_samples, output_dir, csv, svg,
///                snapshots
///   [grid]       x_min, x_max, n_points, pad_points (integer or "auto")
///   [window]     t_start, t_end
///   [detector]   a, b
///   [packet.N]   x0, p0, sigma0, weight_re, weight_im
///
/// Lists are comma separated.  Numbers accept "p/q" fractions.  Packets
/// must be numbered 0, 1, 2, ... without gaps.
struct RunConfig {
    Scenario scenario;
    std::optional<std::string> output_dir;
    bool csv = true;
    bool svg = true;
    bool snapshots = false;

    bool operator==(const RunConfig&) const = default;
};

/// Strict parse: unknown, duplicate or missing keys and out-of-range values
/// throw ConfigError with "line N" and the key name in the message.
/// The resulting scenario has passed validate().
RunConfig parse_config(std::string_view text);

/// Reads and parses a file; an unreadable path throws IoError.
RunConfig load_config(const std::filesystem::path& path);

/// Canonical text.  parse_config(serialize_config(c)) == c, and
/// serializing that again gives the same bytes.
std::string serialize_config(const RunConfig& config);

}  // namespace toa

#endif  // TOA_CONFIG_HPP
