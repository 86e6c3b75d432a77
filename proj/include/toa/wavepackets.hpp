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

#ifndef TOA_WAVEPACKETS_HPP
#define TOA_WAVEPACKETS_HPP

#include <vector>

#include "toa/errors.hpp"
#include "toa/spatial_grid.hpp"

namespace toa {

/// Natural units of a harmonic trap of frequency omega: t0 = 1/omega,
/// l0 = sqrt(hbar/(m omega)), E0 = hbar omega.  Every quantity in this
/// library is expressed in these units with hbar = m = 1.
namespace units {
inline constexpr double hbar = 1.0;
inline constexpr double mass = 1.0;
}  // namespace units

/// One Gaussian packet: mean position x0, mean momentum p0, width sigma0
/// (|psi|^2 has standard deviation sigma0/sqrt(2)) and its coefficient in
/// a superposition.
struct GaussianSpec {
    double x0 = 0.0;
    double p0 = 0.0;
    double sigma0 = 1.0;
    complex weight{1.0, 0.0};

    bool operator==(const GaussianSpec&) const = default;
};

struct InitialState {
    std::vector<GaussianSpec> packets;

    bool operator==(const InitialState&) const = default;
};

enum class Support { inside, marginal, escapes };

/// Width parameter of the freely spread packet, sigma0*sqrt(1 + t^2/sigma0^4).
double evolved_width(double sigma0, double t);

/// Classifies how well the packet evolved to time t fits in the grid.  The
/// margin between its mean and the nearest grid edge must be at least
/// 8 widths (inside); 5 to 8 widths is marginal; below 5 it escapes.
Support packet_support(const GaussianSpec& spec, double t, const SpatialGrid& grid);

/// Closed-form freely evolved Gaussian amplitude at (x, t), weight not
/// applied.  Reduces to the initial packet at t = 0.
complex gaussian_amplitude(const GaussianSpec& spec, double x, double t);

/// Samples the initial packet and renormalizes it on the grid.  Throws
/// SupportError when it escapes the grid; marginal support is reported
/// through diag when given.
WaveFunction make_gaussian(const GaussianSpec& spec, const SpatialGrid& grid,
                           Diagnostics* diag = nullptr);

/// Weighted sum of the packets at t = 0, rescaled to unit norm on the grid
/// (interference cross terms included).
WaveFunction make_superposition(const InitialState& state, const SpatialGrid& grid,
                                Diagnostics* diag = nullptr);

/// Closed-form free evolution sampled verbatim, without renormalization.
WaveFunction analytic_free_evolution(const GaussianSpec& spec, double t, const SpatialGrid& grid,
                                     Diagnostics* diag = nullptr);

/// Linear combination of analytically evolved packets, scaled by the
/// normalization constant of the t = 0 superposition.
WaveFunction analytic_superposition_evolution(const InitialState& state, double t,
                                              const SpatialGrid& grid,
                                              Diagnostics* diag = nullptr);

/// Normalization constant c such that c * sum_k w_k psi_k(x, 0) has unit
/// norm on the grid.
double superposition_norm_constant(const InitialState& state, const SpatialGrid& grid);

/// The same superposition at time t evaluated only on the samples in
/// range, with a precomputed normalization constant.  Same support checks.
std::vector<complex> analytic_superposition_samples(const InitialState& state, double norm_constant,
                                                    double t, const SpatialGrid& grid,
                                                    IndexRange range, Diagnostics* diag = nullptr);

/// analytic_superposition_evolution at t followed by an exact unit-norm
/// rescale on the grid; the starting point of a first-click run.
WaveFunction prepare_state(const InitialState& state, double t, const SpatialGrid& grid,
                           Diagnostics* diag = nullptr);

}  // namespace toa

#endif  // TOA_WAVEPACKETS_HPP
