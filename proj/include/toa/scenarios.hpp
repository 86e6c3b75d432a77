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

#ifndef TOA_SCENARIOS_HPP
#define TOA_SCENARIOS_HPP

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "toa/detection.hpp"
#include "toa/distributions.hpp"
#include "toa/spatial_grid.hpp"
#include "toa/wavepackets.hpp"

namespace toa {

enum class Engine {
    memoryless_point,
    memoryless_finite,
    first_click,
};

/// "memoryless-point", "memoryless-finite", "first-click".
std::string_view engine_name(Engine engine);
std::optional<Engine> parse_engine(std::string_view name);

struct GridSpec {
    double x_min = -60.0;
    double x_max = 120.0;
    std::size_t n_points = 8192;
    /// Padding per side for first-click runs; unset means wrap-safe auto.
    std::optional<std::size_t> pad_points;

    SpatialGrid make() const { return make_grid(x_min, x_max, n_points); }

    bool operator==(const GridSpec&) const = default;
};

/// Everything needed to reproduce one set of arrival-time curves.
struct Scenario {
    std::string name;
    InitialState initial_state;
    /// Finite-size region [a, b); the point-like engine reads the density at a.
    DetectorSpec detector;
    TimeWindow window;
    GridSpec grid;
    std::vector<double> delta_ts;
    std::vector<Engine> engines;
    std::size_t time_samples = 2048;

    bool has_engine(Engine e) const;

    bool operator==(const Scenario&) const = default;
};

/// Checks every downstream precondition: grid, detector inside the grid,
/// window, positive resolutions, packets supported at both window edges.
/// Throws ConfigError with a message naming the offending quantity.
void validate(const Scenario& scenario);

/// Single packet (x0=5, p0=7, sigma0=1), detector [10, 11], delta_t = 1,
/// all three engines, grid (-60, 120, 8192), window [-4, 4).
Scenario scenario_fig1();

/// The fig1 packet and detector swept over delta_t = {1/7, 1, 70} with the
/// finite-size memoryless reference.
Scenario scenario_fig2();

/// Two packets (-30, 10, 1) and (-45, 15, 1) overtaking at x = 0 at t = 3,
/// detector [0, 1], grid (-160, 96, 16384), window [-4.5, 4.5), delta_t = 1/64.
Scenario scenario_fig3();

/// fig1 / fig2 / fig3 by name.
std::optional<Scenario> builtin_scenario(std::string_view name);

struct Curve {
    /// File-safe label, e.g. "ml_point", "first_click_dt0.142857".
    std::string label;
    Engine engine = Engine::memoryless_point;
    std::optional<double> delta_t;
    std::vector<double> times;
    std::vector<double> density;
    std::optional<DistributionStats> stats;
    /// Index into ScenarioReport::first_click for first-click curves.
    std::optional<std::size_t> run_index;
};

struct ScenarioReport {
    Scenario scenario;
    std::vector<Curve> curves;
    std::vector<SweepEntry> first_click;
    /// Largest |clicks + survival - initial norm| over the first-click runs.
    double max_conservation_residual = 0.0;
    /// Ordered key/value pairs describing how the report was produced.
    std::vector<std::pair<std::string, std::string>> provenance;
    std::vector<std::string> warnings;
};

struct RunOptions {
    bool keep_snapshots = false;
};

/// Runs the scenario's engines.  Pure function of the scenario: no clock,
/// no randomness, so identical inputs give identical reports.
ScenarioReport run_scenario(const Scenario& scenario, const RunOptions& options = {});

/// Version string recorded in report provenance.
std::string_view library_version();

}  // namespace toa

#endif  // TOA_SCENARIOS_HPP
