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

#include "toa/propagator.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "toa/errors.hpp"
#include "toa/wavepackets.hpp"

namespace toa {

namespace {

constexpr std::size_t kDenseOracleMaxPoints = 256;

complex free_phase(double p, double dt) {
    return std::polar(1.0, -p * p * dt / (2.0 * units::mass * units::hbar));
}

double edge_mass(const WaveFunction& psi, std::size_t band) {
    const std::size_t n = psi.size();
    double sum = 0.0;
    for (std::size_t j = 0; j < band; ++j) {
        sum += std::norm(psi[j]) + std::norm(psi[n - 1 - j]);
    }
    return sum * psi.grid().dx();
}

}  // namespace

SpectralPropagator::SpectralPropagator(SpatialGrid grid, double dt, std::size_t pad_points)
    : grid_(std::move(grid)),
      dt_(dt),
      pad_(pad_points),
      plan_(grid_.size() + 2 * pad_points),
      wrap_momentum_(0.0) {
    if (!(dt >= 0.0) || !std::isfinite(dt)) {
        throw ConfigError("propagator time step must be finite and non-negative");
    }
    const std::size_t n_pad = padded_size();
    if (!is_power_of_two(n_pad)) {
        std::ostringstream msg;
        msg << "padded length " << grid_.size() << " + 2*" << pad_ << " = " << n_pad
            << " is not a power of two";
        throw ConfigError(msg.str());
    }
    const double dx = grid_.dx();
    const double dp = 2.0 * std::numbers::pi / (static_cast<double>(n_pad) * dx);
    padded_momenta_.resize(n_pad);
    phases_.resize(n_pad);
    for (std::size_t k = 0; k < n_pad; ++k) {
        padded_momenta_[k] = dp * static_cast<double>(dft_frequency(k, n_pad));
        phases_[k] = free_phase(padded_momenta_[k], dt_);
    }
    // Momenta above this cross both pads (total width 2*pad*dx) in one step.
    wrap_momentum_ = dt_ > 0.0 ? 2.0 * static_cast<double>(pad_) * dx / dt_ : 0.0;
}

bool SpectralPropagator::wrap_safe() const {
    return dt_ == 0.0 || (pad_ > 0 && grid_.p_max() <= wrap_momentum_);
}

StepOutcome SpectralPropagator::advance(const WaveFunction& psi, Workspace& ws) const {
    if (!(psi.grid() == grid_)) {
        throw UsageError("wavefunction grid does not match propagator grid");
    }
    const std::size_t n = grid_.size();
    const std::size_t n_pad = padded_size();
    FftBuffer& buf = ws.buffer_;
    if (buf.size() != n_pad) {
        throw UsageError("propagator workspace has the wrong length");
    }

    for (std::size_t j = 0; j < pad_; ++j) {
        buf[j] = 0.0;
        buf[pad_ + n + j] = 0.0;
    }
    for (std::size_t j = 0; j < n; ++j) {
        buf[pad_ + j] = psi[j];
    }

    plan_.forward(buf);

    const double inv_n = 1.0 / static_cast<double>(n_pad);
    double risky = 0.0;
    const bool check_wrap = pad_ > 0 && dt_ > 0.0;
    for (std::size_t k = 0; k < n_pad; ++k) {
        if (check_wrap && std::abs(padded_momenta_[k]) > wrap_momentum_) {
            risky += std::norm(buf[k]);
        }
        buf[k] *= phases_[k] * inv_n;
    }

    plan_.backward(buf);

    StepOutcome out{WaveFunction(grid_), 0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) {
        out.psi[j] = buf[pad_ + j];
    }
    double leaked = 0.0;
    for (std::size_t j = 0; j < pad_; ++j) {
        leaked += std::norm(buf[j]) + std::norm(buf[pad_ + n + j]);
    }
    const double dx = grid_.dx();
    out.leaked_mass = leaked * dx;
    // Discrete Parseval: sum |F_k|^2 = N sum |psi_j|^2.
    out.wrap_risk_mass = risky * dx * inv_n;
    return out;
}

StepOutcome SpectralPropagator::advance(const WaveFunction& psi) const {
    Workspace ws = make_workspace();
    return advance(psi, ws);
}

SpectralPropagator make_propagator(const SpatialGrid& grid, double dt, std::size_t pad_points) {
    return SpectralPropagator(grid, dt, pad_points);
}

std::size_t default_pad_points(const SpatialGrid& grid) { return grid.size() / 2; }

std::size_t wrap_safe_pad_points(const SpatialGrid& grid, double dt) {
    const std::size_t n = grid.size();
    const double needed_width = grid.p_max() * dt;
    std::size_t total = 2 * n;
    while (static_cast<double>(total - n) * grid.dx() < needed_width) {
        total *= 2;
    }
    return (total - n) / 2;
}

WaveFunction step(const SpectralPropagator& prop, const WaveFunction& psi) {
    if (prop.pad_points() == 0) {
        const std::size_t band = psi.size() / 16;
        const double before = edge_mass(psi, band);
        StepOutcome out = prop.advance(psi);
        const double after = edge_mass(out.psi, band);
        if (after - before > kLeakTolerance) {
            std::ostringstream msg;
            msg << "wrap-around guard tripped: mass near the periodic boundary grew by "
                << (after - before) << " in one step; enlarge the grid or add padding";
            throw WrapAroundError(msg.str());
        }
        return std::move(out.psi);
    }
    StepOutcome out = prop.advance(psi);
    if (out.leaked_mass > kLeakTolerance || out.wrap_risk_mass > kLeakTolerance) {
        std::ostringstream msg;
        msg << "wrap-around guard tripped: leaked mass " << out.leaked_mass
            << ", wrap-risk mass " << out.wrap_risk_mass
            << " in one step; enlarge the grid or the padding";
        throw WrapAroundError(msg.str());
    }
    return std::move(out.psi);
}

WaveFunction dense_oracle_step(const SpatialGrid& grid, double dt, const WaveFunction& psi) {
    const std::size_t n = grid.size();
    if (n > kDenseOracleMaxPoints) {
        throw UsageError("dense oracle limited to grids of at most 256 points");
    }
    if (!(psi.grid() == grid)) {
        throw UsageError("wavefunction grid does not match oracle grid");
    }
    // F[k][j] = exp(-2 pi i k j / n); indices reduced mod n before scaling.
    std::vector<complex> dft(n * n);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < n; ++j) {
            const double angle =
                -2.0 * std::numbers::pi * static_cast<double>((k * j) % n) / static_cast<double>(n);
            dft[k * n + j] = std::polar(1.0, angle);
        }
    }
    // M = diag(phase) F
    std::vector<complex> m(n * n);
    for (std::size_t k = 0; k < n; ++k) {
        const complex ph = free_phase(grid.p(k), dt);
        for (std::size_t j = 0; j < n; ++j) {
            m[k * n + j] = ph * dft[k * n + j];
        }
    }
    // U = F^H M / n
    std::vector<complex> u(n * n, complex(0.0, 0.0));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t k = 0; k < n; ++k) {
            const complex f = std::conj(dft[k * n + r]);
            for (std::size_t c = 0; c < n; ++c) {
                u[r * n + c] += f * m[k * n + c];
            }
        }
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    WaveFunction out(grid);
    for (std::size_t r = 0; r < n; ++r) {
        complex acc(0.0, 0.0);
        for (std::size_t c = 0; c < n; ++c) {
            acc += u[r * n + c] * psi[c];
        }
        out[r] = acc * inv_n;
    }
    return out;
}

}  // namespace toa
