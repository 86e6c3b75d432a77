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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"

using namespace toa;

namespace {

std::vector<complex> samples(const WaveFunction& psi) {
    return {psi.amplitudes().begin(), psi.amplitudes().end()};
}

}  // namespace

TEST(Wavepackets, initial_moments_by_quadrature) {
    SpatialGrid g(-60.0, 120.0, 8192);
    WaveFunction psi = make_gaussian(GaussianSpec{5.0, 7.0, 1.0}, g);
    double mean_x = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
        mean_x += g.x(j) * std::norm(psi[j]) * g.dx();
    }
    EXPECT_NEAR(norm_squared(psi), 1.0, 1e-12);
    EXPECT_NEAR(mean_x, 5.0, 1e-8);
    EXPECT_NEAR(oracle::mean_momentum(samples(psi), g.dx()), 7.0, 1e-6);
}

TEST(Wavepackets, closed_form_matches_momentum_superposition) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double x0 = 5 * u(rng), p0 = 4 * u(rng), s = 0.7 + 0.5 * (u(rng) + 1);
        const double t = 2.5 * u(rng);
        const double x = x0 + p0 * t + 2 * u(rng);
        const complex got = gaussian_amplitude(GaussianSpec{x0, p0, s}, x, t);
        const complex want = oracle::gaussian_amplitude_by_momentum(x0, p0, s, x, t);
        EXPECT_NEAR(std::abs(got - want), 0.0, 1e-10) << "trial " << trial;
    }
}

TEST(Wavepackets, spreading_density_matches_closed_form) {
    for (double t : {-4.0, -1.0, 0.0, 0.3, 2.0}) {
        for (double x : {-10.0, -3.0, 4.0, 9.5}) {
            EXPECT_NEAR(std::norm(gaussian_amplitude(GaussianSpec{1.0, 2.0, 1.5}, x, t)),
                        oracle::gaussian_density(1.0, 2.0, 1.5, x, t), 1e-14);
        }
    }
    EXPECT_DOUBLE_EQ(evolved_width(1.0, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(evolved_width(1.0, 1.0), std::sqrt(2.0));
}

TEST(Wavepackets, superposition_normalization) {
    SpatialGrid g(-160.0, 96.0, 16384);
    InitialState s{{GaussianSpec{-30.0, 10.0, 1.0}, GaussianSpec{-45.0, 15.0, 1.0}}};
    WaveFunction psi = make_superposition(s, g);
    EXPECT_NEAR(norm_squared(psi), 1.0, 1e-12);
    WaveFunction a = make_gaussian(s.packets[0], g);
    WaveFunction b = make_gaussian(s.packets[1], g);
    EXPECT_LT(std::abs(overlap(a, b)), 1e-3);
    EXPECT_NEAR(superposition_norm_constant(s, g), 1.0 / std::sqrt(2.0), 1e-3);
}

TEST(Wavepackets, analytic_superposition_keeps_unit_norm_while_contained) {
    SpatialGrid g(-160.0, 96.0, 16384);
    InitialState s{{GaussianSpec{-30.0, 10.0, 1.0}, GaussianSpec{-45.0, 15.0, 1.0}}};
    for (double t : {-4.0, 0.0, 3.0, 4.0}) {
        EXPECT_NEAR(norm_squared(analytic_superposition_evolution(s, t, g)), 1.0, 1e-9) << t;
    }
}

TEST(Wavepackets, sampled_evaluation_matches_full_grid) {
    SpatialGrid g(-60.0, 120.0, 8192);
    InitialState s{{GaussianSpec{5.0, 7.0, 1.0, {0.5, 0.2}}, GaussianSpec{0.0, 6.0, 1.2}}};
    const double c = superposition_norm_constant(s, g);
    WaveFunction full = analytic_superposition_evolution(s, 0.9, g);
    IndexRange r = g.samples_in(10.0, 11.0);
    auto part = analytic_superposition_samples(s, c, 0.9, g, r);
    ASSERT_EQ(part.size(), r.size());
    for (std::size_t j = r.begin; j < r.end; ++j) {
        EXPECT_EQ(part[j - r.begin], full[j]);
    }
}

TEST(Wavepackets, support_classification) {
    SpatialGrid g(-60.0, 120.0, 8192);
    EXPECT_EQ(packet_support(GaussianSpec{5.0, 7.0, 1.0}, 0.0, g), Support::inside);
    EXPECT_EQ(packet_support(GaussianSpec{-53.0, 0.0, 1.0}, 0.0, g), Support::marginal);
    EXPECT_EQ(packet_support(GaussianSpec{-57.0, 0.0, 1.0}, 0.0, g), Support::escapes);
    EXPECT_THROW(make_gaussian(GaussianSpec{-57.0, 0.0, 1.0}, g), SupportError);
    Diagnostics diag;
    make_gaussian(GaussianSpec{-53.0, 0.0, 1.0}, g, &diag);
    EXPECT_EQ(diag.warnings.size(), 1u);
    // Fig. 3 second packet at t = -4 on the narrower grid (-120, 80).
    SpatialGrid narrow(-120.0, 80.0, 16384);
    EXPECT_EQ(packet_support(GaussianSpec{-45.0, 15.0, 1.0}, -4.0, narrow), Support::escapes);
}

TEST(Wavepackets, invalid_inputs) {
    SpatialGrid g(-10.0, 10.0, 256);
    EXPECT_THROW(make_gaussian(GaussianSpec{0.0, 0.0, 0.0}, g), ConfigError);
    EXPECT_THROW(make_gaussian(GaussianSpec{0.0, 0.0, -1.0}, g), ConfigError);
    EXPECT_THROW(make_superposition(InitialState{}, g), UsageError);
    InitialState cancel{{GaussianSpec{0, 0, 1, {1, 0}}, GaussianSpec{0, 0, 1, {-1, 0}}}};
    EXPECT_THROW(make_superposition(cancel, g), UsageError);
}

TEST(Wavepackets, prepare_state_is_unit_norm_evolved_state) {
    SpatialGrid g(-60.0, 120.0, 8192);
    InitialState s{{GaussianSpec{5.0, 7.0, 1.0}}};
    WaveFunction psi = prepare_state(s, -4.0, g);
    EXPECT_NEAR(norm_squared(psi), 1.0, 1e-14);
    for (std::size_t j = 0; j < g.size(); j += 97) {
        EXPECT_NEAR(std::norm(psi[j]), oracle::gaussian_density(5, 7, 1, g.x(j), -4.0), 1e-12);
    }
}
