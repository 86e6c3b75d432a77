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

#ifndef TOA_DETECTION_HPP
#define TOA_DETECTION_HPP

#include <optional>

#include "toa/spatial_grid.hpp"

namespace toa {

enum class DetectorKind {
    finite_size,  // projects onto [a, b)
    point_like,   // reads the density at a; b only reports the length
};

/// Detector region D = [a, b) and, for first-click runs, the spacing
/// delta_t between detection attempts.
struct DetectorSpec {
    double a = 0.0;
    double b = 1.0;
    DetectorKind kind = DetectorKind::finite_size;
    std::optional<double> delta_t;

    double length() const { return b - a; }

    bool operator==(const DetectorSpec&) const = default;
};

/// Throws ConfigError unless a < b and delta_t (when set) is positive.
void validate(const DetectorSpec& det);

/// Grid samples inside the detector; ConfigError if [a, b] is not covered
/// by the grid.
IndexRange detector_samples(const DetectorSpec& det, const SpatialGrid& grid);

/// Click projector: keeps amplitudes on [a, b), zeroes the rest.  The
/// result is not renormalized.
WaveFunction apply_k1(const DetectorSpec& det, const WaveFunction& psi);

/// No-click projector, the complement of apply_k1.  Not renormalized.
WaveFunction apply_k0(const DetectorSpec& det, const WaveFunction& psi);

/// |psi|^2 at the grid sample nearest to a (ties go to the smaller index).
/// Requires a point-like detector inside the grid.
double point_density(const DetectorSpec& det, const WaveFunction& psi);

}  // namespace toa

#endif  // TOA_DETECTION_HPP
