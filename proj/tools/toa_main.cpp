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

// toa: arrival-time distributions from the command line.
//
//   toa run <config> [--out DIR]
//   toa repro fig1|fig2|fig3 [--out DIR]
//   toa sweep <config> --dt 1/7,1,70 [--out DIR]
//   toa check
//
// Exit codes: 0 success, 1 physics-consistency failure, 2 configuration,
// usage or I/O error.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "toa/checks.hpp"
#include "toa/config.hpp"
#include "toa/errors.hpp"
#include "toa/format.hpp"
#include "toa/report.hpp"
#include "toa/scenarios.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPhysics = 1;
constexpr int kExitConfig = 2;

constexpr const char* kConfigHelp = R"(Config file format (natural units: t0, l0, hbar/l0; hbar = m = 1):

  [run]
  name = fig1                      # letters, digits, '_', '-', '.'
  engines = memoryless-point, memoryless-finite, first-click
  delta_t = 1                      # list, required with first-click; "1/7" allowed
  time_samples = 2048              # memoryless samples over the window
  output_dir = out                 # optional, overridden by --out
  csv = true
  svg = true
  snapshots = false                # dump |psi|^2 per attempt (large)

  [grid]
  x_min = -60
  x_max = 120
  n_points = 8192                  # power of two
  pad_points = auto                # or an integer per side

  [window]
  t_start = -4
  t_end = 4

  [detector]
  a = 10
  b = 11

  [packet.0]                       # packet.1, packet.2, ... for superpositions
  x0 = 5
  p0 = 7
  sigma0 = 1
  weight_re = 1                    # optional
  weight_im = 0                    # optional
)";

std::vector<double> parse_dt_list(const std::string& text) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const std::string token =
            text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        auto v = toa::parse_number(token);
        if (!v || !(*v > 0.0)) {
            throw toa::ConfigError("--dt: '" + token + "' is not a positive number");
        }
        out.push_back(*v);
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

void print_summary(const toa::ScenarioReport& report) {
    std::printf("%-26s %12s %12s %12s %12s %6s\n", "curve", "peak_time", "peak_height", "fwhm",
                "mean", "maxima");
    for (const auto& c : report.curves) {
        if (c.stats) {
            std::printf("%-26s %12.6g %12.6g %12.6g %12.6g %6zu\n", c.label.c_str(),
                        c.stats->peak_time, c.stats->peak_height, c.stats->fwhm,
                        c.stats->mean_arrival, c.stats->local_maxima_count);
        } else {
            std::printf("%-26s %12s\n", c.label.c_str(), "(no clicks)");
        }
    }
    for (const auto& entry : report.first_click) {
        std::printf("first-click dt=%g: clicks %.10g, survival %.10g, escaped %.3g, residual %.3g\n",
                    entry.delta_t, entry.result.total_click_probability,
                    entry.result.survival_probability, entry.result.escaped_mass,
                    entry.result.conservation_residual());
    }
}

int execute(const toa::RunConfig& config, const std::string& out_flag) {
    const std::filesystem::path dir =
        !out_flag.empty() ? std::filesystem::path(out_flag)
                          : std::filesystem::path(config.output_dir.value_or("toa_output"));
    toa::RunOptions options;
    options.keep_snapshots = config.snapshots;
    const toa::ScenarioReport report = toa::run_scenario(config.scenario, options);
    for (const auto& w : report.warnings) {
        std::cerr << "warning: " << w << "\n";
    }

    std::vector<std::filesystem::path> written;
    if (config.csv) {
        auto files = toa::emit_csv(report, dir);
        written.insert(written.end(), files.begin(), files.end());
    }
    if (config.svg) {
        written.push_back(toa::emit_svg(report, dir));
    }
    if (config.snapshots) {
        auto files = toa::emit_snapshots(report, dir);
        written.insert(written.end(), files.begin(), files.end());
    }
    print_summary(report);
    for (const auto& p : written) {
        std::printf("wrote %s\n", p.string().c_str());
    }
    if (report.max_conservation_residual > toa::kConservationTolerance) {
        std::cerr << "error: probability conservation residual "
                  << report.max_conservation_residual << " exceeds tolerance\n";
        return kExitPhysics;
    }
    return kExitOk;
}

int run_check() {
    bool all = true;
    for (const auto& r : toa::run_invariant_checks()) {
        std::printf("[%s] %s: %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
        all = all && r.passed;
    }
    std::printf("%s\n", all ? "all checks passed" : "some checks failed");
    return all ? kExitOk : kExitPhysics;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum time-of-arrival distributions: memoryless and first-click detection.",
                 "toa"};
    app.footer(kConfigHelp);
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(toa::library_version()));

    std::string out_dir;
    std::string config_path;
    std::string figure;
    std::string dt_list;

    auto* run = app.add_subcommand("run", "Run the scenario described by a config file.");
    run->add_option("config", config_path, "Config file")->required();
    run->add_option("--out", out_dir, "Output directory (default: output_dir or toa_output)");

    auto* repro = app.add_subcommand("repro", "Reproduce a built-in figure scenario.");
    repro->add_option("figure", figure, "fig1, fig2 or fig3")
        ->required()
        ->check(CLI::IsMember({"fig1", "fig2", "fig3"}));
    repro->add_option("--out", out_dir, "Output directory (default: toa_output)");

    auto* sweep = app.add_subcommand("sweep", "First-click runs over a list of time resolutions.");
    sweep->add_option("config", config_path, "Config file")->required();
    sweep->add_option("--dt", dt_list, "Comma-separated delta_t values, e.g. 1/7,1,70")
        ->required();
    sweep->add_option("--out", out_dir, "Output directory (default: output_dir or toa_output)");

    auto* check = app.add_subcommand("check", "Run the built-in invariant checks.");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (check->parsed()) {
            return run_check();
        }
        if (repro->parsed()) {
            toa::RunConfig config;
            config.scenario = *toa::builtin_scenario(figure);
            return execute(config, out_dir);
        }
        toa::RunConfig config = toa::load_config(config_path);
        if (sweep->parsed()) {
            config.scenario.delta_ts = parse_dt_list(dt_list);
            if (!config.scenario.has_engine(toa::Engine::first_click)) {
                config.scenario.engines.push_back(toa::Engine::first_click);
            }
            toa::validate(config.scenario);
        }
        return execute(config, out_dir);
    } catch (const toa::PhysicsError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPhysics;
    } catch (const toa::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const toa::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const toa::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitConfig;
    }
}
