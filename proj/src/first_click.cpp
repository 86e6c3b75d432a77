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

#include <cmath>
#include <future>
#include <sstream>

#include "toa/distributions.hpp"
#include "toa/errors.hpp"
#include "toa/propagator.hpp"

namespace toa {

namespace {

double checked_delta_t(const DetectorSpec& det) {
    validate(det);
    if (det.kind != DetectorKind::finite_size) {
        throw UsageError("first-click runs need a finite-size detector");
    }
    if (!det.delta_t) {
        throw ConfigError("first-click runs need the detector time resolution delta_t");
    }
    return *det.delta_t;
}

std::string leak_log(const FirstClickResult& r) {
    std::ostringstream msg;
    msg << "leaked mass per step:";
    for (std::size_t i = 0; i < r.leaked_per_step.size(); ++i) {
        if (r.leaked_per_step[i] > 0.0) {
            msg << " [" << i << "]=" << r.leaked_per_step[i];
        }
    }
    return msg.str();
}

}  // namespace

FirstClickResult first_click_distribution(const WaveFunction& initial, const DetectorSpec& det,
                                          const TimeWindow& window,
                                          const PropagationConfig& config) {
    const double dt = checked_delta_t(det);
    const std::size_t attempts = attempt_count(window, dt);
    const SpatialGrid& grid = initial.grid();
    const IndexRange inside = detector_samples(det, grid);
    const double dx = grid.dx();

    FirstClickResult r;
    r.delta_t = dt;
    r.window = window;
    r.pad_points = config.pad_points ? *config.pad_points : wrap_safe_pad_points(grid, dt);
    r.initial_norm = norm_squared(initial);
    r.attempt_times.resize(attempts);
    r.click_weights.resize(attempts);
    r.survival_cumulative.resize(attempts);

    const bool needs_steps = attempts > 1 || config.keep_snapshots;
    std::optional<SpectralPropagator> prop;
    std::optional<SpectralPropagator::Workspace> ws;
    if (needs_steps) {
        prop.emplace(grid, dt, r.pad_points);
        ws.emplace(prop->make_workspace());
    }

    auto advance = [&](WaveFunction& psi, std::size_t after_attempt) {
        StepOutcome out = prop->advance(psi, *ws);
        if (out.wrap_risk_mass > kLeakTolerance) {
            std::ostringstream msg;
            msg << "wrap-around guard tripped after attempt " << after_attempt << ": mass "
                << out.wrap_risk_mass << " moves faster than the padding (" << r.pad_points
                << " points per side) allows for delta_t=" << dt;
            throw WrapAroundError(msg.str());
        }
        r.leaked_per_step.push_back(out.leaked_mass);
        r.escaped_mass += out.leaked_mass;
        psi = std::move(out.psi);
    };

    WaveFunction psi = initial;
    for (std::size_t i = 0; i < attempts; ++i) {
        r.attempt_times[i] = window.t_start + static_cast<double>(i) * dt;

        double clicked = 0.0;
        for (std::size_t j = inside.begin; j < inside.end; ++j) {
            clicked += std::norm(psi[j]);
        }
        r.click_weights[i] = clicked * dx;

        if (config.keep_snapshots) {
            WaveFunction k1(grid);
            for (std::size_t j = inside.begin; j < inside.end; ++j) {
                k1[j] = psi[j];
            }
            r.conditioned_states.push_back(std::move(k1));
        }
        for (std::size_t j = inside.begin; j < inside.end; ++j) {
            psi[j] = 0.0;
        }
        r.survival_cumulative[i] = norm_squared(psi) + r.escaped_mass;

        if (i + 1 < attempts) {
            advance(psi, i);
        }
    }

    // Unitarity keeps the never-clicked weight fixed between the last attempt
    // and t_end, so it is read before the optional final step.
    r.survival_probability = norm_squared(psi) + r.escaped_mass;
    for (double w : r.click_weights) {
        r.total_click_probability += w;
    }
    if (config.keep_snapshots) {
        advance(psi, attempts);
        r.final_state = std::move(psi);
    }

    if (std::abs(r.conservation_residual()) > kConservationTolerance) {
        std::ostringstream msg;
        msg << "probability conservation violated: clicks " << r.total_click_probability
            << " + survival " << r.survival_probability << " - initial norm " << r.initial_norm
            << " = " << r.conservation_residual() << "; " << leak_log(r);
        throw ConsistencyError(msg.str());
    }

    r.conditional_pmf.assign(attempts, 0.0);
    r.conditional_density.assign(attempts, 0.0);
    if (r.detected()) {
        for (std::size_t i = 0; i < attempts; ++i) {
            r.conditional_pmf[i] = r.click_weights[i] / r.total_click_probability;
            r.conditional_density[i] = r.conditional_pmf[i] / dt;
        }
    }
    return r;
}

FirstClickResult first_click_distribution(const InitialState& state, const SpatialGrid& grid,
                                          const DetectorSpec& det, const TimeWindow& window,
                                          const PropagationConfig& config) {
    checked_delta_t(det);
    validate(window);
    return first_click_distribution(prepare_state(state, window.t_start, grid), det, window,
                                    config);
}

WaveFunction survival_state(const FirstClickResult& result) {
    if (!result.final_state) {
        throw UsageError("survival_state needs a run with keep_snapshots enabled");
    }
    return *result.final_state;
}

std::vector<SweepEntry> resolution_sweep(const InitialState& state, const SpatialGrid& grid,
                                         const DetectorSpec& det, const TimeWindow& window,
                                         std::span<const double> delta_ts,
                                         const PropagationConfig& config) {
    auto run_one = [&](double dt) {
        DetectorSpec d = det;
        d.delta_t = dt;
        SweepEntry e;
        e.delta_t = dt;
        e.window = round_up_to_multiple(window, dt);
        e.result = first_click_distribution(state, grid, d, e.window, config);
        if (e.result.detected()) {
            e.stats = stats(e.result);
        }
        return e;
    };

    if (delta_ts.size() == 1) {
        return {run_one(delta_ts[0])};
    }
    std::vector<std::future<SweepEntry>> pending;
    pending.reserve(delta_ts.size());
    for (double dt : delta_ts) {
        pending.push_back(std::async(std::launch::async, run_one, dt));
    }
    std::vector<SweepEntry> entries;
    entries.reserve(pending.size());
    for (auto& f : pending) {
        entries.push_back(f.get());
    }
    return entries;
}

}  // namespace toa
