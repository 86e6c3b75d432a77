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

#include "toa/wavepackets.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace toa {

namespace {

constexpr double kHardMarginWidths = 5.0;
constexpr double kSoftMarginWidths = 8.0;

void validate(const GaussianSpec& spec) {
    if (!(spec.sigma0 > 0.0) || !std::isfinite(spec.sigma0)) {
        throw ConfigError("packet sigma0 must be positive");
    }
    if (!std::isfinite(spec.x0) || !std::isfinite(spec.p0)) {
        throw ConfigError("packet x0 and p0 must be finite");
    }
}

void check_support(const GaussianSpec& spec, double t, const SpatialGrid& grid, Diagnostics* diag) {
    const Support s = packet_support(spec, t, grid);
    if (s == Support::inside) {
        return;
    }
    std::ostringstream msg;
    msg << "packet (x0=" << spec.x0 << ", p0=" << spec.p0 << ", sigma0=" << spec.sigma0
        << ") at t=" << t << " has mean " << spec.x0 + spec.p0 * t << " and width "
        << evolved_width(spec.sigma0, t) << " against grid [" << grid.x_min() << ", "
        << grid.x_max() << ")";
    if (s == Support::escapes) {
        throw SupportError("packet escapes grid: " + msg.str());
    }
    if (diag != nullptr) {
        diag->warn("packet close to grid edge: " + msg.str());
    }
}

void require_packets(const InitialState& state) {
    if (state.packets.empty()) {
        throw UsageError("initial state needs at least one packet");
    }
    for (const auto& p : state.packets) {
        validate(p);
    }
}

}  // namespace

double evolved_width(double sigma0, double t) {
    const double s2 = sigma0 * sigma0;
    return sigma0 * std::sqrt(1.0 + (t * t) / (s2 * s2));
}

Support packet_support(const GaussianSpec& spec, double t, const SpatialGrid& grid) {
    const double mean = spec.x0 + spec.p0 * t / units::mass;
    const double width = evolved_width(spec.sigma0, t);
    const double margin = std::min(mean - grid.x_min(), grid.x_max() - mean);
    if (margin < kHardMarginWidths * width) {
        return Support::escapes;
    }
    if (margin < kSoftMarginWidths * width) {
        return Support::marginal;
    }
    return Support::inside;
}

complex gaussian_amplitude(const GaussianSpec& spec, double x, double t) {
    using namespace std::complex_literals;
    const double s = spec.sigma0;
    const double shift = x - spec.x0 - spec.p0 * t / units::mass;
    const complex spread = 1.0 + 1.0i * units::hbar * t / (units::mass * s * s);
    const complex envelope = std::exp(-(shift * shift) / (2.0 * s * s * spread));
    const complex carrier =
        std::exp(1.0i * (spec.p0 / units::hbar) * (x - spec.x0 - spec.p0 * t / (2.0 * units::mass)));
    const complex denom =
        std::sqrt(std::sqrt(std::numbers::pi) * (s + 1.0i * units::hbar * t / (units::mass * s)));
    return envelope * carrier / denom;
}

WaveFunction make_gaussian(const GaussianSpec& spec, const SpatialGrid& grid, Diagnostics* diag) {
    validate(spec);
    check_support(spec, 0.0, grid, diag);
    WaveFunction psi(grid);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        psi[j] = gaussian_amplitude(spec, grid.x(j), 0.0);
    }
    return psi.scaled(1.0 / std::sqrt(norm_squared(psi)));
}

double superposition_norm_constant(const InitialState& state, const SpatialGrid& grid) {
    require_packets(state);
    WaveFunction psi(grid);
    for (const auto& p : state.packets) {
        for (std::size_t j = 0; j < grid.size(); ++j) {
            psi[j] += p.weight * gaussian_amplitude(p, grid.x(j), 0.0);
        }
    }
    const double n2 = norm_squared(psi);
    if (!(n2 > 0.0)) {
        throw UsageError("superposition has zero norm (weights cancel)");
    }
    return 1.0 / std::sqrt(n2);
}

WaveFunction make_superposition(const InitialState& state, const SpatialGrid& grid,
                                Diagnostics* diag) {
    require_packets(state);
    for (const auto& p : state.packets) {
        check_support(p, 0.0, grid, diag);
    }
    WaveFunction psi(grid);
    for (const auto& p : state.packets) {
        for (std::size_t j = 0; j < grid.size(); ++j) {
            psi[j] += p.weight * gaussian_amplitude(p, grid.x(j), 0.0);
        }
    }
    const double n2 = norm_squared(psi);
    if (!(n2 > 0.0)) {
        throw UsageError("superposition has zero norm (weights cancel)");
    }
    return psi.scaled(1.0 / std::sqrt(n2));
}

WaveFunction analytic_free_evolution(const GaussianSpec& spec, double t, const SpatialGrid& grid,
                                     Diagnostics* diag) {
    validate(spec);
    check_support(spec, t, grid, diag);
    WaveFunction psi(grid);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        psi[j] = gaussian_amplitude(spec, grid.x(j), t);
    }
    return psi;
}

WaveFunction analytic_superposition_evolution(const InitialState& state, double t,
                                              const SpatialGrid& grid, Diagnostics* diag) {
    const double c = superposition_norm_constant(state, grid);
    for (const auto& p : state.packets) {
        check_support(p, t, grid, diag);
    }
    WaveFunction psi(grid);
    for (const auto& p : state.packets) {
        const complex w = c * p.weight;
        for (std::size_t j = 0; j < grid.size(); ++j) {
            psi[j] += w * gaussian_amplitude(p, grid.x(j), t);
        }
    }
    return psi;
}

std::vector<complex> analytic_superposition_samples(const InitialState& state, double norm_constant,
                                                    double t, const SpatialGrid& grid,
                                                    IndexRange range, Diagnostics* diag) {
    require_packets(state);
    if (range.end > grid.size() || range.begin > range.end) {
        throw UsageError("sample range outside the grid");
    }
    for (const auto& p : state.packets) {
        check_support(p, t, grid, diag);
    }
    std::vector<complex> out(range.size());
    for (const auto& p : state.packets) {
        const complex w = norm_constant * p.weight;
        for (std::size_t j = range.begin; j < range.end; ++j) {
            out[j - range.begin] += w * gaussian_amplitude(p, grid.x(j), t);
        }
    }
    return out;
}

WaveFunction prepare_state(const InitialState& state, double t, const SpatialGrid& grid,
                           Diagnostics* diag) {
    WaveFunction psi = analytic_superposition_evolution(state, t, grid, diag);
    return psi.scaled(1.0 / std::sqrt(norm_squared(psi)));
}

}  // namespace toa
