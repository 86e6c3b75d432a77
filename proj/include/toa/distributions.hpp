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

#ifndef TOA_DISTRIBUTIONS_HPP
#define TOA_DISTRIBUTIONS_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "toa/detection.hpp"
#include "toa/spatial_grid.hpp"
#include "toa/wavepackets.hpp"

namespace toa {

/// Below this total, a Bayes denominator is treated as zero.
inline constexpr double kNoDetectionThreshold = 1e-15;

/// Allowed mismatch between the initial norm and clicks plus survival.
inline constexpr double kConservationTolerance = 1e-8;

/// Clock window [t_start, t_end).
struct TimeWindow {
    double t_start = -4.0;
    double t_end = 4.0;

    double duration() const { return t_end - t_start; }

    /// [-T/2, T/2)
    static TimeWindow centered(double duration) { return {-duration / 2.0, duration / 2.0}; }

    bool operator==(const TimeWindow&) const = default;
};

void validate(const TimeWindow& window);

/// Number of attempts n = T / dt.  Throws ConfigError unless T is an
/// integer multiple of dt (relative tolerance 1e-9).
std::size_t attempt_count(const TimeWindow& window, double dt);

/// Extends t_end so the duration becomes the smallest multiple of dt that
/// is >= the original duration.
TimeWindow round_up_to_multiple(const TimeWindow& window, double dt);

/// Bayes-normalized arrival-time density sampled on a uniform time grid.
struct ToaDistribution {
    std::vector<double> times;
    std::vector<double> density;
    /// Riemann sum of the unnormalized numerator over the window.
    double normalization_integral = 0.0;
    double sample_spacing = 0.0;
};

enum class MemorylessEvolution {
    analytic,  // closed-form Gaussian evolution
    spectral,  // cross-check: same curve from the spectral propagator
};

/// Memoryless arrival-time density p(t | x in D): the detector-region
/// probability (finite-size) or the density at a (point-like) at each of
/// time_samples uniform times t_k = t_start + k T / time_samples, divided by
/// its Riemann integral over the window.
///
/// Throws UsageError when time_samples < 16 and NoDetectionError when the
/// integral is <= kNoDetectionThreshold.
ToaDistribution memoryless_distribution(const InitialState& state, const SpatialGrid& grid,
                                        const DetectorSpec& det, const TimeWindow& window,
                                        std::size_t time_samples = 2048,
                                        MemorylessEvolution evolution = MemorylessEvolution::analytic);

struct PropagationConfig {
    /// Padding per side; unset picks wrap_safe_pad_points for the step.
    std::optional<std::size_t> pad_points;
    /// Keep K1 psi at every attempt and the never-clicked state at t_end.
    bool keep_snapshots = false;
};

/// Outcome of a first-click run with attempts at t_i = t_start + i delta_t.
///
/// click_weights[i] is the joint probability of no click before t_i and a
/// click at t_i.  survival_probability is the weight of the never-clicked
/// branch; it includes escaped_mass, the part of that branch that left the
/// working grid through the absorbing pads (fast components kicked out by
/// the sharp projectors, or the packet itself flying away).
struct FirstClickResult {
    double delta_t = 0.0;
    TimeWindow window;
    std::vector<double> attempt_times;
    std::vector<double> click_weights;
    std::vector<double> conditional_pmf;
    std::vector<double> conditional_density;
    /// Never-clicked weight after the no-click projection at attempt i.
    std::vector<double> survival_cumulative;
    /// Mass absorbed by the pads during the step following attempt i.
    std::vector<double> leaked_per_step;

    double total_click_probability = 0.0;
    double survival_probability = 0.0;
    double escaped_mass = 0.0;
    double initial_norm = 0.0;
    std::size_t pad_points = 0;

    /// K1 applied at each attempt (keep_snapshots only).
    std::vector<WaveFunction> conditioned_states;
    /// Never-clicked branch evolved to t_end (keep_snapshots only).
    std::optional<WaveFunction> final_state;

    bool detected() const { return total_click_probability > kNoDetectionThreshold; }

    double conservation_residual() const {
        return total_click_probability + survival_probability - initial_norm;
    }
};

/// First-click run from the analytic superposition evolved to t_start and
/// renormalized on the grid.  The detector must be finite-size with
/// delta_t set, and the window a multiple of delta_t.
FirstClickResult first_click_distribution(const InitialState& state, const SpatialGrid& grid,
                                          const DetectorSpec& det, const TimeWindow& window,
                                          const PropagationConfig& config = {});

/// Same recursion from an arbitrary starting wavefunction at t_start:
///
///   for i = 0 .. n-1:
///     w_i = |K1 psi|^2;  psi <- K0 psi;  if i < n-1: psi <- U(delta_t) psi
///
/// so the click state at attempt f is K1 [U(delta_t) K0]^f psi(t_start).
/// Branches are never renormalized.  Throws ConsistencyError when clicks
/// plus survival miss the initial norm by more than kConservationTolerance
/// and WrapAroundError when the padding admits wrap-around.
FirstClickResult first_click_distribution(const WaveFunction& initial, const DetectorSpec& det,
                                          const TimeWindow& window,
                                          const PropagationConfig& config = {});

/// Never-clicked branch at t_end, unnormalized.  Its norm squared plus
/// escaped_mass equals survival_probability.  Throws UsageError when the
/// run kept no snapshots.
WaveFunction survival_state(const FirstClickResult& result);

struct Peak {
    double time = 0.0;
    double height = 0.0;
    double prominence = 0.0;
};

struct DistributionStats {
    double peak_time = 0.0;
    double peak_height = 0.0;
    double fwhm = 0.0;
    double mean_arrival = 0.0;
    std::size_t local_maxima_count = 0;
    /// Local maxima with prominence >= 5% of the peak height, in time order.
    std::vector<Peak> prominent_peaks;
};

/// Summary statistics of a density sampled on uniform times.  The FWHM
/// interpolates linearly between the samples straddling half maximum on
/// either side of the global peak (falling back to the window edge).
/// Throws UsageError for fewer than 3 samples or an all-zero density.
DistributionStats stats(std::span<const double> times, std::span<const double> density);
DistributionStats stats(const ToaDistribution& dist);
/// Statistics of conditional_density over the attempt times.
DistributionStats stats(const FirstClickResult& result);

struct SweepEntry {
    double delta_t = 0.0;
    TimeWindow window;
    FirstClickResult result;
    /// Unset when no click probability reached the detector.
    std::optional<DistributionStats> stats;
};

/// Independent first-click runs, one per time resolution, each on the
/// window extended to a multiple of that resolution.  Runs execute in
/// parallel; results keep the input order.
std::vector<SweepEntry> resolution_sweep(const InitialState& state, const SpatialGrid& grid,
                                         const DetectorSpec& det, const TimeWindow& window,
                                         std::span<const double> delta_ts,
                                         const PropagationConfig& config = {});

}  // namespace toa

#endif  // TOA_DISTRIBUTIONS_HPP
