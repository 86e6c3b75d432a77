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

#ifndef TOA_PROPAGATOR_HPP
#define TOA_PROPAGATOR_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "toa/fft.hpp"
#include "toa/spatial_grid.hpp"

namespace toa {

/// Mass allowed to leave the working grid in one guarded step.
inline constexpr double kLeakTolerance = 1e-6;

/// Result of one unguarded propagation step.
///
/// leaked_mass is the probability that ended up in the zero-padding and was
/// discarded on restriction to the working grid.  wrap_risk_mass is the
/// probability carried by momenta fast enough to cross both pads within the
/// step and re-enter the grid from the opposite side; it is always zero when
/// the padding is wrap-safe for the step length.
struct StepOutcome {
    WaveFunction psi;
    double leaked_mass = 0.0;
    double wrap_risk_mass = 0.0;
};

/// Free evolution over a fixed step dt by multiplication with
/// exp(-i p^2 dt / 2) in momentum space.
///
/// The wavefunction is embedded in a zero-padded array of
/// n + 2 * pad_points samples (pad_points per side), transformed, multiplied
/// by the cached phase table, transformed back and restricted to the
/// original grid.  Exact for free dynamics; the only errors are
/// discretization, truncation and round-off.
///
/// Immutable after construction and safe to share across threads; each
/// thread needs its own Workspace.
class SpectralPropagator {
   public:
    class Workspace {
       public:
        explicit Workspace(std::size_t padded_size) : buffer_(padded_size) {}

       private:
        friend class SpectralPropagator;
        FftBuffer buffer_;
    };

    /// Throws ConfigError when dt < 0 or n + 2 * pad_points is not a power
    /// of two.
    SpectralPropagator(SpatialGrid grid, double dt, std::size_t pad_points);

    const SpatialGrid& grid() const { return grid_; }
    double dt() const { return dt_; }
    std::size_t pad_points() const { return pad_; }
    std::size_t padded_size() const { return grid_.size() + 2 * pad_; }

    /// Unit-modulus phases exp(-i p_k^2 dt / 2) over the padded momentum grid.
    std::span<const complex> phases() const { return phases_; }

    /// Momentum of padded bin k.
    double padded_momentum(std::size_t k) const { return padded_momenta_[k]; }

    /// True when no representable momentum can cross both pads in one step.
    bool wrap_safe() const;

    Workspace make_workspace() const { return Workspace(padded_size()); }

    StepOutcome advance(const WaveFunction& psi, Workspace& ws) const;
    StepOutcome advance(const WaveFunction& psi) const;

   private:
    SpatialGrid grid_;
    double dt_;
    std::size_t pad_;
    FftPlan plan_;
    std::vector<double> padded_momenta_;
    std::vector<complex> phases_;
    double wrap_momentum_;
};

SpectralPropagator make_propagator(const SpatialGrid& grid, double dt, std::size_t pad_points);

/// Default padding: half the grid on each side, doubling the transform.
std::size_t default_pad_points(const SpatialGrid& grid);

/// Smallest padding, at least the default, with a power-of-two transform
/// length and 2 * pad_points * dx >= p_max * dt, so nothing can wrap around
/// within a single step of length dt.
std::size_t wrap_safe_pad_points(const SpatialGrid& grid, double dt);

/// Guarded step.  With padding, throws WrapAroundError when more than
/// kLeakTolerance leaks into the pads or could wrap around.  Without
/// padding, throws when the mass in the outer sixteenth of the grid on
/// either side grows by more than kLeakTolerance, the signature of a packet
/// running into the periodic boundary.
WaveFunction step(const SpectralPropagator& prop, const WaveFunction& psi);

/// Brute-force reference: builds the full n x n unitary F^-1 diag(phase) F
/// from explicit DFT matrices and applies it by matrix-vector product.
/// No padding.  Throws UsageError for grids above 256 points.
WaveFunction dense_oracle_step(const SpatialGrid& grid, double dt, const WaveFunction& psi);

}  // namespace toa

#endif  // TOA_PROPAGATOR_HPP
