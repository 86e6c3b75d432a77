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

#include <algorithm>
#include <cmath>

#include "toa/distributions.hpp"
#include "toa/errors.hpp"

namespace toa {

namespace {

constexpr double kProminenceFraction = 0.05;

// Height above the higher of the two lowest points reached when walking
// away from the peak until a strictly higher sample (or the edge) is hit.
double prominence(std::span<const double> d, std::size_t i) {
    double left_min = d[i];
    for (std::size_t j = i; j-- > 0;) {
        if (d[j] > d[i]) {
            break;
        }
        left_min = std::min(left_min, d[j]);
    }
    double right_min = d[i];
    for (std::size_t j = i + 1; j < d.size(); ++j) {
        if (d[j] > d[i]) {
            break;
        }
        right_min = std::min(right_min, d[j]);
    }
    return d[i] - std::max(left_min, right_min);
}

}  // namespace

DistributionStats stats(std::span<const double> times, std::span<const double> density) {
    if (times.size() != density.size()) {
        throw UsageError("stats: times and density differ in length");
    }
    const std::size_t n = density.size();
    if (n < 3) {
        throw UsageError("stats needs at least 3 samples");
    }
    const auto peak_it = std::max_element(density.begin(), density.end());
    const auto ip = static_cast<std::size_t>(peak_it - density.begin());
    if (!(*peak_it > 0.0)) {
        throw UsageError("stats: density is zero everywhere");
    }

    DistributionStats s;
    s.peak_time = times[ip];
    s.peak_height = density[ip];

    const double half = s.peak_height / 2.0;
    double t_left = times.front();
    for (std::size_t j = ip; j-- > 0;) {
        if (density[j] <= half) {
            const double frac = (half - density[j]) / (density[j + 1] - density[j]);
            t_left = times[j] + frac * (times[j + 1] - times[j]);
            break;
        }
    }
    double t_right = times.back();
    for (std::size_t j = ip + 1; j < n; ++j) {
        if (density[j] <= half) {
            const double frac = (density[j - 1] - half) / (density[j - 1] - density[j]);
            t_right = times[j - 1] + frac * (times[j] - times[j - 1]);
            break;
        }
    }
    s.fwhm = t_right - t_left;

    const double spacing = times[1] - times[0];
    double mean = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        mean += times[j] * density[j];
    }
    s.mean_arrival = mean * spacing;

    for (std::size_t j = 1; j + 1 < n; ++j) {
        if (density[j] > density[j - 1] && density[j] > density[j + 1]) {
            const double prom = prominence(density, j);
            if (prom >= kProminenceFraction * s.peak_height) {
                s.prominent_peaks.push_back({times[j], density[j], prom});
            }
        }
    }
    s.local_maxima_count = s.prominent_peaks.size();
    return s;
}

DistributionStats stats(const ToaDistribution& dist) { return stats(dist.times, dist.density); }

DistributionStats stats(const FirstClickResult& result) {
    return stats(result.attempt_times, result.conditional_density);
}

}  // namespace toa
