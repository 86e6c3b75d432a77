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

#include "toa/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "toa/errors.hpp"
#include "toa/format.hpp"
#include "toa/propagator.hpp"

namespace toa {

namespace {

constexpr std::string_view kVersion = "1.0.0";

bool file_safe(std::string_view name) {
    return !name.empty() && std::all_of(name.begin(), name.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
               c == '_' || c == '-' || c == '.';
    });
}

Scenario fig1_base(std::string name) {
    Scenario s;
    s.name = std::move(name);
    s.initial_state.packets = {GaussianSpec{5.0, 7.0, 1.0, {1.0, 0.0}}};
    s.detector = DetectorSpec{10.0, 11.0, DetectorKind::finite_size, std::nullopt};
    s.window = TimeWindow::centered(8.0);
    s.grid = GridSpec{-60.0, 120.0, 8192, std::nullopt};
    s.time_samples = 2048;
    return s;
}

}  // namespace

std::string_view engine_name(Engine engine) {
    switch (engine) {
        case Engine::memoryless_point:
            return "memoryless-point";
        case Engine::memoryless_finite:
            return "memoryless-finite";
        case Engine::first_click:
            return "first-click";
    }
    return "unknown";
}

std::optional<Engine> parse_engine(std::string_view name) {
    for (Engine e : {Engine::memoryless_point, Engine::memoryless_finite, Engine::first_click}) {
        if (engine_name(e) == name) {
            return e;
        }
    }
    return std::nullopt;
}

bool Scenario::has_engine(Engine e) const {
    return std::find(engines.begin(), engines.end(), e) != engines.end();
}

void validate(const Scenario& s) {
    if (!file_safe(s.name)) {
        throw ConfigError("scenario name '" + s.name +
                          "' must be non-empty and use only letters, digits, '_', '-', '.'");
    }
    if (s.initial_state.packets.empty()) {
        throw ConfigError("scenario needs at least one packet");
    }
    const SpatialGrid grid = s.grid.make();
    if (s.grid.pad_points && !is_power_of_two(s.grid.n_points + 2 * *s.grid.pad_points)) {
        throw ConfigError("grid pad_points must make n_points + 2*pad_points a power of two");
    }
    validate(s.detector);
    detector_samples(s.detector, grid);
    validate(s.window);
    if (s.engines.empty()) {
        throw ConfigError("scenario needs at least one engine");
    }
    for (std::size_t i = 0; i < s.engines.size(); ++i) {
        for (std::size_t j = i + 1; j < s.engines.size(); ++j) {
            if (s.engines[i] == s.engines[j]) {
                throw ConfigError("engine '" + std::string(engine_name(s.engines[i])) +
                                  "' listed twice");
            }
        }
    }
    if (s.has_engine(Engine::first_click) && s.delta_ts.empty()) {
        throw ConfigError("first-click engine needs at least one delta_t");
    }
    for (double dt : s.delta_ts) {
        if (!(dt > 0.0) || !std::isfinite(dt)) {
            throw ConfigError("delta_t values must be positive");
        }
    }
    if (s.time_samples < 16) {
        throw ConfigError("time_samples must be at least 16");
    }
    for (std::size_t k = 0; k < s.initial_state.packets.size(); ++k) {
        const GaussianSpec& p = s.initial_state.packets[k];
        if (!(p.sigma0 > 0.0)) {
            throw ConfigError("packet." + std::to_string(k) + " sigma0 must be positive");
        }
        for (double t : {0.0, s.window.t_start, s.window.t_end}) {
            if (packet_support(p, t, grid) == Support::escapes) {
                std::ostringstream msg;
                msg << "packet." << k << " escapes grid at t=" << t << " (mean "
                    << p.x0 + p.p0 * t << ", width " << evolved_width(p.sigma0, t) << ")";
                throw ConfigError(msg.str());
            }
        }
    }
}

Scenario scenario_fig1() {
    Scenario s = fig1_base("fig1");
    s.delta_ts = {1.0};
    s.engines = {Engine::memoryless_point, Engine::memoryless_finite, Engine::first_click};
    return s;
}

Scenario scenario_fig2() {
    Scenario s = fig1_base("fig2");
    // Detector traversal time dL/p0 = 1/7, then t0 and 70 t0.
    s.delta_ts = {1.0 / 7.0, 1.0, 70.0};
    s.engines = {Engine::memoryless_finite, Engine::first_click};
    return s;
}

Scenario scenario_fig3() {
    Scenario s;
    s.name = "fig3";
    // x1 = p1 * x0 / p0 = 15 * (-30) / 10: both means reach x = 0 at t = 3.
    s.initial_state.packets = {GaussianSpec{-30.0, 10.0, 1.0, {1.0, 0.0}},
                               GaussianSpec{-45.0, 15.0, 1.0, {1.0, 0.0}}};
    s.detector = DetectorSpec{0.0, 1.0, DetectorKind::finite_size, std::nullopt};
    // Slow components of the p0 = 10 packet still arrive after t = 4; T = 9
    // keeps more than 99.99% of the arrival mass inside the window.
    s.window = TimeWindow::centered(9.0);
    s.grid = GridSpec{-160.0, 96.0, 16384, std::nullopt};
    // Fringes at the detector beat with period ~0.1 t0; 1/64 resolves them.
    s.delta_ts = {1.0 / 64.0};
    s.engines = {Engine::memoryless_point, Engine::memoryless_finite, Engine::first_click};
    s.time_samples = 2048;
    return s;
}

std::optional<Scenario> builtin_scenario(std::string_view name) {
    if (name == "fig1") {
        return scenario_fig1();
    }
    if (name == "fig2") {
        return scenario_fig2();
    }
    if (name == "fig3") {
        return scenario_fig3();
    }
    return std::nullopt;
}

std::string_view library_version() { return kVersion; }

ScenarioReport run_scenario(const Scenario& scenario, const RunOptions& options) {
    validate(scenario);
    const SpatialGrid grid = scenario.grid.make();

    ScenarioReport report;
    report.scenario = scenario;
    report.provenance = {
        {"tool", "toa-firstclick"},
        {"version", std::string(library_version())},
        {"scenario", scenario.name},
        {"grid", format_shortest(scenario.grid.x_min) + " " + format_shortest(scenario.grid.x_max) +
                     " " + std::to_string(scenario.grid.n_points)},
        {"window", format_shortest(scenario.window.t_start) + " " +
                       format_shortest(scenario.window.t_end)},
        {"time_samples", std::to_string(scenario.time_samples)},
        {"units", "hbar = m = 1; t0, l0, hbar/l0"},
    };

    Diagnostics diag;
    for (const auto& p : scenario.initial_state.packets) {
        for (double t : {0.0, scenario.window.t_start, scenario.window.t_end}) {
            if (packet_support(p, t, grid) == Support::marginal) {
                std::ostringstream msg;
                msg << "packet (x0=" << p.x0 << ", p0=" << p.p0 << ") within 8 widths of the grid edge at t="
                    << t;
                diag.warn(msg.str());
            }
        }
    }

    for (Engine e : scenario.engines) {
        if (e == Engine::first_click) {
            continue;
        }
        DetectorSpec det = scenario.detector;
        det.delta_t.reset();
        det.kind = e == Engine::memoryless_point ? DetectorKind::point_like
                                                 : DetectorKind::finite_size;
        ToaDistribution dist = memoryless_distribution(scenario.initial_state, grid, det,
                                                       scenario.window, scenario.time_samples);
        Curve c;
        c.label = e == Engine::memoryless_point ? "ml_point" : "ml_finite";
        c.engine = e;
        c.stats = stats(dist);
        c.times = std::move(dist.times);
        c.density = std::move(dist.density);
        report.curves.push_back(std::move(c));
    }

    if (scenario.has_engine(Engine::first_click)) {
        PropagationConfig config;
        config.pad_points = scenario.grid.pad_points;
        config.keep_snapshots = options.keep_snapshots;
        report.first_click = resolution_sweep(scenario.initial_state, grid, scenario.detector,
                                              scenario.window, scenario.delta_ts, config);
        for (std::size_t i = 0; i < report.first_click.size(); ++i) {
            const SweepEntry& entry = report.first_click[i];
            Curve c;
            c.label = "first_click_dt" + format_significant(entry.delta_t, 6);
            c.engine = Engine::first_click;
            c.delta_t = entry.delta_t;
            c.times = entry.result.attempt_times;
            c.density = entry.result.conditional_density;
            c.stats = entry.stats;
            c.run_index = i;
            report.curves.push_back(std::move(c));

            report.max_conservation_residual = std::max(
                report.max_conservation_residual, std::abs(entry.result.conservation_residual()));
            report.provenance.emplace_back(
                "first_click_dt" + format_significant(entry.delta_t, 6),
                "attempts=" + std::to_string(entry.result.attempt_times.size()) +
                    " pad_points=" + std::to_string(entry.result.pad_points) +
                    " t_end=" + format_shortest(entry.window.t_end));
            if (!entry.result.detected()) {
                diag.warn("first-click run at delta_t=" + format_shortest(entry.delta_t) +
                          " registered no clicks (total " +
                          format_significant(entry.result.total_click_probability, 3) + ")");
            }
        }
    }
    report.warnings = std::move(diag.warnings);
    return report;
}

}  // namespace toa
