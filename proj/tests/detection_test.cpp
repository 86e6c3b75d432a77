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

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "toa/errors.hpp"

using namespace toa;

namespace {

const DetectorSpec kFinite{10.0, 11.0, DetectorKind::finite_size, std::nullopt};

}  // namespace

TEST(Detection, projectors_are_complementary_and_idempotent) {
    SpatialGrid g(-60.0, 120.0, 8192);
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        WaveFunction psi(g, oracle::random_normalized(g.size(), g.dx(), rng));
        WaveFunction k1 = apply_k1(kFinite, psi);
        WaveFunction k0 = apply_k0(kFinite, psi);
        for (std::size_t j = 0; j < g.size(); ++j) {
            ASSERT_EQ(k0[j] + k1[j], psi[j]);
            ASSERT_TRUE(k0[j] == 0.0 || k1[j] == 0.0);
            const bool inside = g.x(j) >= 10.0 && g.x(j) < 11.0;
            ASSERT_EQ(k1[j], inside ? psi[j] : complex(0.0));
        }
        WaveFunction k1k1 = apply_k1(kFinite, k1);
        WaveFunction k0k1 = apply_k0(kFinite, k1);
        for (std::size_t j = 0; j < g.size(); ++j) {
            ASSERT_EQ(k1k1[j], k1[j]);
            ASSERT_EQ(k0k1[j], complex(0.0));
        }
        EXPECT_LE(std::abs(norm_squared(k0) + norm_squared(k1) - norm_squared(psi)), 1e-12);
    }
}

TEST(Detection, projection_does_not_renormalize) {
    SpatialGrid g(0.0, 16.0, 64);
    WaveFunction psi(g, std::vector<complex>(64, complex(0.25, 0.0)));
    WaveFunction k1 = apply_k1(DetectorSpec{1.0, 2.0}, psi);
    EXPECT_NEAR(norm_squared(k1), 4 * 0.0625 * 0.25, 1e-15);
}

TEST(Detection, detector_must_fit_the_grid) {
    SpatialGrid g(-10.0, 10.0, 256);
    EXPECT_THROW(detector_samples(DetectorSpec{9.0, 12.0}, g), ConfigError);
    EXPECT_THROW(detector_samples(DetectorSpec{-11.0, 0.0}, g), ConfigError);
    EXPECT_THROW(validate(DetectorSpec{1.0, 1.0}), ConfigError);
    EXPECT_THROW(validate(DetectorSpec{1.0, 2.0, DetectorKind::finite_size, 0.0}), ConfigError);
    EXPECT_NO_THROW(validate(DetectorSpec{1.0, 2.0, DetectorKind::finite_size, 0.5}));
}

TEST(Detection, point_density_reads_nearest_sample) {
    SpatialGrid g(0.0, 16.0, 64);
    std::vector<complex> v(64);
    v[4] = {0.0, 2.0};
    v[5] = 1.0;
    WaveFunction psi(g, v);
    DetectorSpec point{1.0, 2.0, DetectorKind::point_like, std::nullopt};
    EXPECT_DOUBLE_EQ(point_density(point, psi), 4.0);
    EXPECT_THROW(point_density(kFinite, psi), UsageError);
    EXPECT_THROW(apply_k1(point, psi), UsageError);
    EXPECT_THROW(point_density(DetectorSpec{20.0, 21.0, DetectorKind::point_like}, psi),
                 ConfigError);
}
