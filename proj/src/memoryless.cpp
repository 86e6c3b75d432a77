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
#include <sstream>

#include "toa/distributions.hpp"
#include "toa/errors.hpp"
#include "toa/propagator.hpp"

namespace toa {

void validate(const TimeWindow& window) {
    if (!std::isfinite(window.t_start) || !std::isfinite(window.t_end) ||
        !(window.t_end > window.t_start)) {
        throw ConfigError("time window requires t_end > t_start");
    }
}

std::size_t attempt_count(const TimeWindow& window, double dt) {
    validate(window);
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw ConfigError("attempt spacing delta_t must be positive");
    }
    const double ratio = window.duration() / dt;
    const double n = std::round(ratio);
    if (n < 1.0 || std::abs(ratio - n) > 1e-9 * std::max(1.0, n)) {
        std::ostringstream msg;
        msg << "window duration " << window.duration() << " is not an integer multiple of delta_t "
            << dt;
        throw ConfigError(msg.str());
    }
    return static_cast<std::size_t>(n);
}

TimeWindow round_up_to_multiple(const TimeWindow& window, double dt) {
    validate(window);
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw ConfigError("attempt spacing delta_t must be positive");
    }
    const double ratio = window.duration() / dt;
    double n = std::round(ratio);
    if (std::abs(ratio - n) > 1e-9 * std::max(1.0, n)) {
        n = std::ceil(ratio);
    }
    n = std::max(n, 1.0);
    return {window.t_start, window.t_start + n * dt};
}

ToaDistribution memoryless_distribution(const InitialState& state, const SpatialGrid& grid,
                                        const DetectorSpec& det, const TimeWindow& window,
                                        std::size_t time_samples, MemorylessEvolution evolution) {
    validate(window);
    if (time_samples < 16) {
        throw UsageError("memoryless distribution needs at least 16 time samples");
    }
    const IndexRange inside = detector_samples(det, grid);
    const bool point = det.kind == DetectorKind::point_like;

    auto numerator = [&](const WaveFunction& psi) {
        return point ? point_density(det, psi) : probability_in(psi, inside);
    };

    ToaDistribution dist;
    dist.sample_spacing = window.duration() / static_cast<double>(time_samples);
    dist.times.resize(time_samples);
    dist.density.resize(time_samples);
    for (std::size_t k = 0; k < time_samples; ++k) {
        dist.times[k] = window.t_start + static_cast<double>(k) * dist.sample_spacing;
    }

    if (evolution == MemorylessEvolution::analytic) {
        // Only the samples the numerator reads are evaluated.
        const std::size_t near = grid.nearest_sample(det.a);
        const IndexRange needed = point ? IndexRange{near, near + 1} : inside;
        const double c = superposition_norm_constant(state, grid);
        for (std::size_t k = 0; k < time_samples; ++k) {
            const auto amps =
                analytic_superposition_samples(state, c, dist.times[k], grid, needed);
            double sum = 0.0;
            for (const complex& a : amps) {
                sum += std::norm(a);
            }
            dist.density[k] = point ? sum : sum * grid.dx();
        }
    } else {
        const SpectralPropagator prop(grid, dist.sample_spacing, default_pad_points(grid));
        auto ws = prop.make_workspace();
        WaveFunction psi = analytic_superposition_evolution(state, window.t_start, grid);
        for (std::size_t k = 0; k < time_samples; ++k) {
            dist.density[k] = numerator(psi);
            if (k + 1 < time_samples) {
                StepOutcome out = prop.advance(psi, ws);
                if (out.leaked_mass > kLeakTolerance || out.wrap_risk_mass > kLeakTolerance) {
                    std::ostringstream msg;
                    msg << "wrap-around guard tripped at t=" << dist.times[k]
                        << " (leaked mass " << out.leaked_mass << ")";
                    throw WrapAroundError(msg.str());
                }
                psi = std::move(out.psi);
            }
        }
    }

    double integral = 0.0;
    for (double v : dist.density) {
        integral += v;
    }
    integral *= dist.sample_spacing;
    dist.normalization_integral = integral;
    if (!(integral > kNoDetectionThreshold)) {
        std::ostringstream msg;
        msg << "particle never reaches detector [" << det.a << ", " << det.b
            << "] within the window (integral " << integral << ")";
        throw NoDetectionError(msg.str());
    }
    for (double& v : dist.density) {
        v /= integral;
    }
    return dist;
}

}  // namespace toa
