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

#ifndef TOA_REPORT_HPP
#define TOA_REPORT_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "toa/scenarios.hpp"

namespace toa {

inline constexpr std::string_view kMemorylessCsvHeader = "t,density";
inline constexpr std::string_view kFirstClickCsvHeader =
    "attempt_index,t,weight,pmf,density,survival_cumulative";
inline constexpr std::string_view kSummaryCsvHeader =
    "curve,engine,delta_t,peak_time,peak_height,fwhm,mean_arrival,local_maxima_count,"
    "total_click_probability,survival_probability,escaped_mass,conservation_residual";

/// Digits used for every number written to CSV.
inline constexpr int kCsvDigits = 12;

/// CSV text of one curve: memoryless curves get kMemorylessCsvHeader,
/// first-click curves kFirstClickCsvHeader.  '\n' line endings.
std::string curve_csv(const ScenarioReport& report, const Curve& curve);

/// One row per curve with its statistics (empty fields when undefined) and,
/// for first-click curves, the click/survival bookkeeping.
std::string summary_csv(const ScenarioReport& report);

/// Writes <name>_<label>.csv per curve and <name>_summary.csv into dir
/// (created if needed).  Returns the paths in write order.  IoError when a
/// file cannot be written.
std::vector<std::filesystem::path> emit_csv(const ScenarioReport& report,
                                            const std::filesystem::path& dir);

/// Self-contained SVG overlaying all curves on linear axes over the
/// scenario window, one polyline per curve, legend keyed by engine.
/// UsageError when the report has no curves.
std::string render_svg(const ScenarioReport& report);

/// Writes <name>.svg into dir.
std::filesystem::path emit_svg(const ScenarioReport& report, const std::filesystem::path& dir);

/// Writes <name>_<label>_snapshots.csv for each first-click run that kept
/// snapshots: column x, then |K1 psi|^2 per attempt, then the never-clicked
/// density at the end of the window.
std::vector<std::filesystem::path> emit_snapshots(const ScenarioReport& report,
                                                  const std::filesystem::path& dir);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

/// Reads a numeric CSV written by this library.  IoError on unreadable
/// files, ConfigError on malformed content.
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace toa

#endif  // TOA_REPORT_HPP
