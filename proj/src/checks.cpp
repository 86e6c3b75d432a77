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

#include "toa/checks.hpp"

#include <cmath>
#include <functional>
#include <random>

#include "toa/config.hpp"
#include "toa/detection.hpp"
#include "toa/distributions.hpp"
#include "toa/format.hpp"
#include "toa/propagator.hpp"
#include "toa/scenarios.hpp"

namespace toa {

namespace {

WaveFunction random_state(const SpatialGrid& grid, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    std::vector<complex> amps(grid.size());
    for (auto& a : amps) {
        a = {normal(rng), normal(rng)};
    }
    WaveFunction psi(grid, std::move(amps));
    return psi.scaled(1.0 / std::sqrt(norm_squared(psi)));
}

double max_abs_diff(const WaveFunction& a, const WaveFunction& b) {
    double m = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        m = std::max(m, std::abs(a[j] - b[j]));
    }
    return m;
}

CheckResult propagator_vs_closed_form() {
    const SpatialGrid grid = make_grid(-60.0, 120.0, 8192);
    const GaussianSpec g{5.0, 7.0, 1.0};
    const SpectralPropagator prop(grid, 0.05, default_pad_points(grid));
    WaveFunction psi = analytic_free_evolution(g, 0.0, grid);
    for (int i = 0; i < 20; ++i) {
        psi = step(prop, psi);
    }
    const double err = max_abs_diff(psi, analytic_free_evolution(g, 1.0, grid));
    return {"propagator matches closed form", err < 1e-8,
            "max error " + format_significant(err, 3)};
}

CheckResult propagator_vs_dense() {
    const SpatialGrid grid = make_grid(-8.0, 8.0, 128);
    const SpectralPropagator prop(grid, 0.3, 0);
    std::mt19937_64 rng(20260101);
    double worst = 0.0;
    for (int k = 0; k < 5; ++k) {
        const WaveFunction psi = random_state(grid, rng);
        const WaveFunction a = prop.advance(psi).psi;
        const WaveFunction b = dense_oracle_step(grid, 0.3, psi);
        double l2 = 0.0;
        for (std::size_t j = 0; j < a.size(); ++j) {
            l2 += std::norm(a[j] - b[j]) * grid.dx();
        }
        worst = std::max(worst, std::sqrt(l2));
    }
    return {"spectral step matches dense matrix", worst < 1e-10,
            "worst L2 " + format_significant(worst, 3)};
}

CheckResult unitarity() {
    const SpatialGrid grid = make_grid(-60.0, 120.0, 8192);
    const SpectralPropagator prop(grid, 0.001, default_pad_points(grid));
    WaveFunction psi = make_gaussian(GaussianSpec{5.0, 7.0, 1.0}, grid);
    const double n0 = norm_squared(psi);
    for (int i = 0; i < 200; ++i) {
        psi = step(prop, psi);
    }
    const double drift = std::abs(norm_squared(psi) - n0);
    return {"spectral steps preserve the norm", drift < 1e-9,
            "drift " + format_significant(drift, 3) + " over 200 steps"};
}

CheckResult kraus_algebra() {
    const SpatialGrid grid = make_grid(-10.0, 10.0, 256);
    const DetectorSpec det{-1.0, 2.5, DetectorKind::finite_size, std::nullopt};
    std::mt19937_64 rng(7);
    double worst = 0.0;
    bool exact = true;
    for (int k = 0; k < 20; ++k) {
        const WaveFunction psi = random_state(grid, rng);
        const WaveFunction k1 = apply_k1(det, psi);
        const WaveFunction k0 = apply_k0(det, psi);
        for (std::size_t j = 0; j < psi.size(); ++j) {
            exact = exact && k0[j] + k1[j] == psi[j] && (k0[j] == 0.0 || k1[j] == 0.0);
        }
        exact = exact && max_abs_diff(apply_k1(det, k1), k1) == 0.0 &&
                max_abs_diff(apply_k0(det, k0), k0) == 0.0;
        worst = std::max(worst,
                         std::abs(norm_squared(k0) + norm_squared(k1) - norm_squared(psi)));
    }
    return {"click/no-click projectors", exact && worst <= 1e-12,
            "norm split error " + format_significant(worst, 3)};
}

CheckResult conservation() {
    const Scenario s = scenario_fig1();
    DetectorSpec det = s.detector;
    det.delta_t = 1.0;
    const FirstClickResult r =
        first_click_distribution(s.initial_state, s.grid.make(), det, s.window);
    const double res = std::abs(r.conservation_residual());
    return {"clicks plus survival conserve probability", res < 1e-10,
            "residual " + format_significant(res, 3)};
}

CheckResult memoryless_normalization() {
    const Scenario s = scenario_fig1();
    const ToaDistribution d =
        memoryless_distribution(s.initial_state, s.grid.make(), s.detector, s.window, 512);
    double integral = 0.0;
    for (double v : d.density) {
        integral += v * d.sample_spacing;
    }
    const double err = std::abs(integral - 1.0);
    return {"memoryless density integrates to one", err < 1e-6,
            "error " + format_significant(err, 3)};
}

CheckResult config_round_trip() {
    bool ok = true;
    std::string detail = "fig1 fig2 fig3";
    for (const char* name : {"fig1", "fig2", "fig3"}) {
        RunConfig c;
        c.scenario = *builtin_scenario(name);
        const std::string text = serialize_config(c);
        const RunConfig back = parse_config(text);
        if (!(back == c) || serialize_config(back) != text) {
            ok = false;
            detail = std::string(name) + " does not round-trip";
        }
    }
    return {"config serialization round-trips", ok, detail};
}

}  // namespace

std::vector<CheckResult> run_invariant_checks() {
    const std::vector<std::function<CheckResult()>> checks{
        propagator_vs_closed_form, propagator_vs_dense, unitarity,          kraus_algebra,
        conservation,              memoryless_normalization, config_round_trip,
    };
    std::vector<CheckResult> results;
    for (const auto& check : checks) {
        try {
            results.push_back(check());
        } catch (const std::exception& e) {
            results.push_back({"(check threw)", false, e.what()});
        }
    }
    return results;
}

}  // namespace toa
