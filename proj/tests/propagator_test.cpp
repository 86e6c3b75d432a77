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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <thread>

#include "oracles.hpp"
#include "toa/wavepackets.hpp"

using namespace toa;

namespace {

double l2_distance(const WaveFunction& a, const std::vector<complex>& b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        s += std::norm(a[j] - b[j]) * a.grid().dx();
    }
    return std::sqrt(s);
}

double max_error(const WaveFunction& a, const WaveFunction& b) {
    double m = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        m = std::max(m, std::abs(a[j] - b[j]));
    }
    return m;
}

}  // namespace

TEST(Propagator, matches_closed_form_evolution) {
    SpatialGrid g(-60.0, 120.0, 8192);
    GaussianSpec spec{5.0, 7.0, 1.0};
    SpectralPropagator prop(g, 0.05, default_pad_points(g));
    WaveFunction psi = analytic_free_evolution(spec, 0.0, g);
    for (int i = 0; i < 20; ++i) {
        psi = step(prop, psi);
    }
    EXPECT_LT(max_error(psi, analytic_free_evolution(spec, 1.0, g)), 1e-8);
}

TEST(Propagator, single_long_step_equals_many_short_ones) {
    SpatialGrid g(-60.0, 120.0, 8192);
    WaveFunction psi0 = make_gaussian(GaussianSpec{5.0, 7.0, 1.0}, g);
    SpectralPropagator big(g, 1.0, wrap_safe_pad_points(g, 1.0));
    SpectralPropagator small(g, 0.125, default_pad_points(g));
    WaveFunction a = step(big, psi0);
    WaveFunction b = psi0;
    for (int i = 0; i < 8; ++i) {
        b = step(small, b);
    }
    EXPECT_LT(max_error(a, b), 1e-11);
}

TEST(Propagator, matches_dense_oracle_on_random_states) {
    SpatialGrid g(-6.0, 10.0, 128);
    std::mt19937_64 rng(2026);
    for (double dt : {0.01, 0.2, 1.7}) {
        SpectralPropagator prop(g, dt, 0);
        auto u = oracle::dense_free_propagator(g.size(), g.dx(), dt);
        for (int k = 0; k < 5; ++k) {
            auto v = oracle::random_normalized(g.size(), g.dx(), rng);
            WaveFunction out = prop.advance(WaveFunction(g, v)).psi;
            EXPECT_LT(l2_distance(out, oracle::matvec(u, v)), 1e-10);
            WaveFunction lib = dense_oracle_step(g, dt, WaveFunction(g, v));
            EXPECT_LT(l2_distance(out, {lib.amplitudes().begin(), lib.amplitudes().end()}), 1e-10);
        }
    }
}

TEST(Propagator, norm_is_preserved) {
    SpatialGrid g(-60.0, 120.0, 8192);
    SpectralPropagator prop(g, 0.002, default_pad_points(g));
    WaveFunction psi = make_gaussian(GaussianSpec{5.0, 7.0, 1.0}, g);
    const double n0 = norm_squared(psi);
    for (int i = 0; i < 300; ++i) {
        psi = step(prop, psi);
    }
    EXPECT_NEAR(norm_squared(psi), n0, 1e-11);
}

TEST(Propagator, zero_step_is_identity) {
    SpatialGrid g(-8.0, 8.0, 64);
    std::mt19937_64 rng(1);
    auto v = oracle::random_normalized(64, g.dx(), rng);
    SpectralPropagator prop(g, 0.0, 0);
    EXPECT_LT(l2_distance(prop.advance(WaveFunction(g, v)).psi, v), 1e-14);
    EXPECT_TRUE(prop.wrap_safe());
}

TEST(Propagator, time_reversal_on_symmetric_grid) {
    // Grid symmetric under x -> -x: x_min = -(n-1) dx / 2.
    const std::size_t n = 1024;
    const double dx = 0.05;
    const double x_min = -static_cast<double>(n - 1) * dx / 2;
    SpatialGrid g(x_min, x_min + static_cast<double>(n) * dx, n);
    WaveFunction psi0 = make_gaussian(GaussianSpec{-3.0, 4.0, 1.0}, g);
    SpectralPropagator prop(g, 0.4, default_pad_points(g));
    WaveFunction fwd = step(prop, psi0);
    // Conjugate, propagate forward again, conjugate back: undoes the step.
    WaveFunction back(g);
    for (std::size_t j = 0; j < n; ++j) {
        back[j] = std::conj(fwd[j]);
    }
    back = prop.advance(back).psi;
    for (std::size_t j = 0; j < n; ++j) {
        back[j] = std::conj(back[j]);
    }
    EXPECT_LT(max_error(back, psi0), 1e-11);

    // Parity: the mirrored packet evolves into the mirrored state.
    WaveFunction mirrored = step(prop, make_gaussian(GaussianSpec{3.0, -4.0, 1.0}, g));
    for (std::size_t j = 0; j < n; ++j) {
        EXPECT_NEAR(std::abs(mirrored[n - 1 - j] - fwd[j]), 0.0, 1e-11);
    }
}

TEST(Propagator, guards_against_leaving_the_grid) {
    SpatialGrid g(-20.0, 20.0, 1024);
    WaveFunction psi = make_gaussian(GaussianSpec{10.0, 8.0, 1.0}, g);
    SpectralPropagator padded(g, 2.0, default_pad_points(g));
    EXPECT_THROW(step(padded, psi), WrapAroundError);
    SpectralPropagator bare(g, 2.0, 0);
    EXPECT_THROW(step(bare, psi), WrapAroundError);
    SpectralPropagator fine(g, 0.1, default_pad_points(g));
    EXPECT_NO_THROW(step(fine, psi));
}

TEST(Propagator, wrap_safe_padding) {
    SpatialGrid g(-60.0, 120.0, 8192);
    EXPECT_EQ(default_pad_points(g), 4096u);
    for (double dt : {0.01, 1.0 / 7, 1.0, 70.0}) {
        const std::size_t pad = wrap_safe_pad_points(g, dt);
        EXPECT_GE(pad, default_pad_points(g));
        SpectralPropagator p(g, dt, pad);
        EXPECT_TRUE(p.wrap_safe()) << dt;
    }
    EXPECT_THROW(SpectralPropagator(g, 0.1, 100), ConfigError);
    EXPECT_THROW(SpectralPropagator(g, -0.1, 0), ConfigError);
}

TEST(Propagator, shared_between_threads) {
    SpatialGrid g(-60.0, 120.0, 8192);
    SpectralPropagator prop(g, 0.05, default_pad_points(g));
    WaveFunction psi0 = make_gaussian(GaussianSpec{5.0, 7.0, 1.0}, g);
    WaveFunction expected = prop.advance(psi0).psi;
    std::vector<WaveFunction> got(4, WaveFunction(g));
    std::vector<std::thread> threads;
    for (int t = 0; t < 4; ++t) {
        threads.emplace_back([&, t] {
            auto ws = prop.make_workspace();
            got[t] = prop.advance(psi0, ws).psi;
        });
    }
    for (auto& th : threads) {
        th.join();
    }
    for (const auto& w : got) {
        EXPECT_EQ(max_error(w, expected), 0.0);
    }
}
