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

#include "toa/detection.hpp"

#include <cmath>
#include <sstream>

#include "toa/errors.hpp"

namespace toa {

namespace {

void require_finite_size(const DetectorSpec& det) {
    if (det.kind != DetectorKind::finite_size) {
        throw UsageError("Kraus projectors need a finite-size detector");
    }
}

}  // namespace

void validate(const DetectorSpec& det) {
    if (!std::isfinite(det.a) || !std::isfinite(det.b) || !(det.a < det.b)) {
        std::ostringstream msg;
        msg << "detector requires a < b (got a=" << det.a << ", b=" << det.b << ")";
        throw ConfigError(msg.str());
    }
    if (det.delta_t && !(*det.delta_t > 0.0 && std::isfinite(*det.delta_t))) {
        throw ConfigError("detector time resolution delta_t must be positive");
    }
}

IndexRange detector_samples(const DetectorSpec& det, const SpatialGrid& grid) {
    validate(det);
    const bool covered = det.kind == DetectorKind::finite_size
                             ? det.a >= grid.x_min() && det.b <= grid.x_max()
                             : det.a >= grid.x_min() && det.a < grid.x_max();
    if (!covered) {
        std::ostringstream msg;
        msg << "detector [" << det.a << ", " << det.b << "] lies outside grid [" << grid.x_min()
            << ", " << grid.x_max() << ")";
        throw ConfigError(msg.str());
    }
    return grid.samples_in(det.a, det.b);
}

WaveFunction apply_k1(const DetectorSpec& det, const WaveFunction& psi) {
    require_finite_size(det);
    const IndexRange inside = detector_samples(det, psi.grid());
    WaveFunction out(psi.grid());
    for (std::size_t j = inside.begin; j < inside.end; ++j) {
        out[j] = psi[j];
    }
    return out;
}

WaveFunction apply_k0(const DetectorSpec& det, const WaveFunction& psi) {
    require_finite_size(det);
    const IndexRange inside = detector_samples(det, psi.grid());
    WaveFunction out = psi;
    for (std::size_t j = inside.begin; j < inside.end; ++j) {
        out[j] = 0.0;
    }
    return out;
}

double point_density(const DetectorSpec& det, const WaveFunction& psi) {
    if (det.kind != DetectorKind::point_like) {
        throw UsageError("point_density needs a point-like detector");
    }
    detector_samples(det, psi.grid());
    return std::norm(psi[psi.grid().nearest_sample(det.a)]);
}

}  // namespace toa
