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

#include "toa/spatial_grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "toa/errors.hpp"
#include "toa/fft.hpp"

namespace toa {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

long dft_frequency(std::size_t k, std::size_t n) {
    const auto kk = static_cast<long>(k);
    const auto nn = static_cast<long>(n);
    return kk < nn / 2 ? kk : kk - nn;
}

SpatialGrid::SpatialGrid(double x_min, double x_max, std::size_t n_points)
    : x_min_(x_min), x_max_(x_max), dx_(0.0), n_(n_points) {
    if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_max > x_min)) {
        throw ConfigError("grid requires x_max > x_min (got x_min=" + std::to_string(x_min) +
                          ", x_max=" + std::to_string(x_max) + ")");
    }
    if (n_points < 8 || !is_power_of_two(n_points)) {
        throw ConfigError("grid n_points must be a power of two >= 8 (got " +
                          std::to_string(n_points) + ")");
    }
    dx_ = (x_max - x_min) / static_cast<double>(n_points);

    auto table = std::make_shared<std::vector<double>>(n_points);
    const double dp = 2.0 * std::numbers::pi / (static_cast<double>(n_points) * dx_);
    for (std::size_t k = 0; k < n_points; ++k) {
        (*table)[k] = dp * static_cast<double>(dft_frequency(k, n_points));
    }
    momenta_ = std::move(table);
}

double SpatialGrid::p_max() const { return std::numbers::pi / dx_; }

IndexRange SpatialGrid::samples_in(double a, double b) const {
    // First index whose sample is >= bound, decided with the same x(j)
    // arithmetic every caller sees.
    auto first_at_or_above = [this](double bound) -> std::size_t {
        double guess = std::ceil((bound - x_min_) / dx_);
        if (guess <= 0.0) {
            return 0;
        }
        if (guess >= static_cast<double>(n_)) {
            guess = static_cast<double>(n_);
        }
        auto j = static_cast<std::size_t>(guess);
        while (j > 0 && x(j - 1) >= bound) {
            --j;
        }
        while (j < n_ && x(j) < bound) {
            ++j;
        }
        return j;
    };
    IndexRange r{first_at_or_above(a), first_at_or_above(b)};
    if (r.end < r.begin) {
        r.end = r.begin;
    }
    return r;
}

std::size_t SpatialGrid::nearest_sample(double xq) const {
    double guess = std::floor((xq - x_min_) / dx_);
    std::size_t lo = 0;
    if (guess > 0.0) {
        lo = guess >= static_cast<double>(n_ - 1) ? n_ - 1 : static_cast<std::size_t>(guess);
    }
    std::size_t best = lo;
    double best_dist = std::abs(x(lo) - xq);
    const std::size_t first = lo > 0 ? lo - 1 : 0;
    const std::size_t last = lo + 2 < n_ ? lo + 2 : n_ - 1;
    for (std::size_t j = first; j <= last; ++j) {
        const double d = std::abs(x(j) - xq);
        if (d < best_dist || (d == best_dist && j < best)) {
            best = j;
            best_dist = d;
        }
    }
    return best;
}

SpatialGrid make_grid(double x_min, double x_max, std::size_t n_points) {
    return SpatialGrid(x_min, x_max, n_points);
}

WaveFunction::WaveFunction(SpatialGrid grid)
    : grid_(std::move(grid)), amplitudes_(grid_.size(), complex(0.0, 0.0)) {}

WaveFunction::WaveFunction(SpatialGrid grid, std::vector<complex> amplitudes)
    : grid_(std::move(grid)), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != grid_.size()) {
        throw UsageError("wavefunction has " + std::to_string(amplitudes_.size()) +
                         " amplitudes for a grid of " + std::to_string(grid_.size()) + " points");
    }
}

WaveFunction WaveFunction::scaled(complex factor) const {
    WaveFunction out = *this;
    for (auto& v : out.amplitudes_) {
        v *= factor;
    }
    return out;
}

void require_same_grid(const WaveFunction& a, const WaveFunction& b) {
    if (!(a.grid() == b.grid())) {
        throw UsageError("wavefunctions live on different grids");
    }
}

double norm_squared(const WaveFunction& psi) {
    double sum = 0.0;
    for (const auto& v : psi.amplitudes()) {
        sum += std::norm(v);
    }
    return sum * psi.grid().dx();
}

complex overlap(const WaveFunction& phi, const WaveFunction& psi) {
    require_same_grid(phi, psi);
    complex sum(0.0, 0.0);
    for (std::size_t j = 0; j < psi.size(); ++j) {
        sum += std::conj(phi[j]) * psi[j];
    }
    return sum * psi.grid().dx();
}

double probability_in(const WaveFunction& psi, IndexRange range) {
    double sum = 0.0;
    for (std::size_t j = range.begin; j < range.end; ++j) {
        sum += std::norm(psi[j]);
    }
    return sum * psi.grid().dx();
}

double probability_in(const WaveFunction& psi, double a, double b) {
    if (!(a < b)) {
        throw UsageError("probability_in requires a < b");
    }
    return probability_in(psi, psi.grid().samples_in(a, b));
}

std::vector<complex> to_momentum(const WaveFunction& psi) {
    const auto& g = psi.grid();
    const std::size_t n = g.size();
    FftPlan plan(n);
    FftBuffer buf(n);
    for (std::size_t j = 0; j < n; ++j) {
        buf[j] = psi[j];
    }
    plan.forward(buf);
    std::vector<complex> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        // Shift the transform origin from x_0 = x_min to x = 0.
        out[k] = g.dx() * buf[k] * std::polar(1.0, -g.p(k) * g.x_min());
    }
    return out;
}

}  // namespace toa
