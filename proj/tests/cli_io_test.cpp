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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "toa/config.hpp"
#include "toa/errors.hpp"
#include "toa/format.hpp"
#include "toa/report.hpp"

using namespace toa;
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scenario_file(const std::string& name) {
    return fs::path(TOA_SOURCE_DIR) / "scenarios" / (name + ".cfg");
}

fs::path fresh_dir(const std::string& name) {
    fs::path d = fs::temp_directory_path() / ("toa_test_" + name);
    fs::remove_all(d);
    return d;
}

std::string expect_config_error(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    ADD_FAILURE() << "no ConfigError for:\n" << text;
    return "";
}

std::string replace_once(std::string s, const std::string& from, const std::string& to) {
    const auto pos = s.find(from);
    EXPECT_NE(pos, std::string::npos) << from;
    return s.replace(pos, from.size(), to);
}

}  // namespace

TEST(Format, shortest_round_trips) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i) {
        const double v = u(rng) / (1 + i);
        EXPECT_EQ(parse_number(format_shortest(v)), v);
    }
    EXPECT_EQ(format_shortest(1.0 / 64.0), "0.015625");
    EXPECT_EQ(format_significant(-0.0, 12), "0");
    EXPECT_EQ(format_significant(1.0 / 3.0, 12), "0.333333333333");
}

TEST(Format, strict_number_parsing) {
    EXPECT_EQ(parse_number("1/7"), 1.0 / 7.0);
    EXPECT_EQ(parse_number("+2.5"), 2.5);
    EXPECT_EQ(parse_number("-3e-2"), -0.03);
    EXPECT_FALSE(parse_number("").has_value());
    EXPECT_FALSE(parse_number("1.0x").has_value());
    EXPECT_FALSE(parse_number("1/0").has_value());
    EXPECT_FALSE(parse_number("nan").has_value());
    EXPECT_FALSE(parse_number(" 1").has_value());
}

TEST(Config, shipped_files_match_builtin_scenarios) {
    for (const char* name : {"fig1", "fig2", "fig3"}) {
        const std::string text = read_file(scenario_file(name));
        RunConfig c = parse_config(text);
        EXPECT_EQ(c.scenario, *builtin_scenario(name)) << name;
        EXPECT_EQ(serialize_config(c), text) << name;
        RunConfig fresh;
        fresh.scenario = *builtin_scenario(name);
        EXPECT_EQ(serialize_config(fresh), text) << name;
    }
}

TEST(Config, round_trip_with_every_option) {
    RunConfig c;
    c.scenario = scenario_fig3();
    c.scenario.initial_state.packets[1].weight = {0.25, -1.0 / 3.0};
    c.scenario.grid.pad_points = 8192;
    c.scenario.delta_ts = {1.0 / 64.0, 1.0 / 7.0, 0.1};
    c.output_dir = "some/dir";
    c.csv = false;
    c.snapshots = true;
    const std::string text = serialize_config(c);
    EXPECT_EQ(parse_config(text), c);
    EXPECT_EQ(serialize_config(parse_config(text)), text);
}

TEST(Config, every_mutated_key_is_rejected) {
    const std::string text = read_file(scenario_file("fig3"));
    std::istringstream lines(text);
    std::string line;
    int mutated = 0;
    std::size_t offset = 0;
    while (std::getline(lines, line)) {
        const auto eq = line.find(" = ");
        if (eq != std::string::npos) {
            std::string bad = text;
            bad.insert(offset + eq, "x");  // "sigma0" -> "sigma0x"
            const std::string msg = expect_config_error(bad);
            EXPECT_NE(msg.find(line.substr(0, eq) + "x"), std::string::npos) << msg;
            ++mutated;
        }
        offset += line.size() + 1;
    }
    EXPECT_GT(mutated, 20);
}

TEST(Config, errors_name_key_and_line) {
    const std::string fig1 = read_file(scenario_file("fig1"));
    std::string msg = expect_config_error(replace_once(fig1, "sigma0 = 1", "sigma = 1"));
    EXPECT_NE(msg.find("'sigma'"), std::string::npos) << msg;
    EXPECT_NE(msg.find("line 41"), std::string::npos) << msg;

    msg = expect_config_error(replace_once(fig1, "sigma0 = 1", "sigma0 = -1"));
    EXPECT_NE(msg.find("sigma0"), std::string::npos) << msg;

    msg = expect_config_error(replace_once(fig1, "delta_t = 1", "delta_t = 0"));
    EXPECT_NE(msg.find("delta_t"), std::string::npos) << msg;

    msg = expect_config_error(replace_once(fig1, "b = 11", "b = 10"));
    EXPECT_NE(msg.find("a < b"), std::string::npos) << msg;

    msg = expect_config_error(replace_once(fig1, "x0 = 5\n", ""));
    EXPECT_NE(msg.find("'x0'"), std::string::npos) << msg;

    msg = expect_config_error(fig1 + "\n[detector]\na = 1\nb = 2\n");
    EXPECT_NE(msg.find("twice"), std::string::npos) << msg;

    msg = expect_config_error(replace_once(fig1, "[packet.0]", "[packet.1]"));
    EXPECT_NE(msg.find("packet"), std::string::npos) << msg;

    msg = expect_config_error(replace_once(fig1, "n_points = 8192", "n_points = 8000"));
    EXPECT_NE(msg.find("n_points"), std::string::npos) << msg;

    msg = expect_config_error(replace_once(fig1, "engines = ", "engines = first_click, "));
    EXPECT_NE(msg.find("first_click"), std::string::npos) << msg;

    msg = expect_config_error(replace_once(fig1, "csv = true", "csv = yes"));
    EXPECT_NE(msg.find("csv"), std::string::npos) << msg;

    msg = expect_config_error(replace_once(fig1, "a = 10", "a = 200\nb = 201\n#"));
    EXPECT_NE(msg.find("twice"), std::string::npos) << msg;

    msg = expect_config_error(replace_once(fig1, "a = 10\nb = 11", "a = 200\nb = 201"));
    EXPECT_NE(msg.find("outside grid"), std::string::npos) << msg;
}

TEST(Config, comments_blank_lines_and_fractions) {
    const std::string fig2 = read_file(scenario_file("fig2"));
    std::string text = "# perturbed fig2\n\n" +
                       replace_once(fig2, "delta_t = 0.14285714285714285", "delta_t = 1/7");
    EXPECT_EQ(parse_config(text).scenario, scenario_fig2());
    EXPECT_THROW(load_config("/nonexistent/file.cfg"), IoError);
}

TEST(Report, csv_headers_and_row_counts) {
    ScenarioReport r = run_scenario(scenario_fig1());
    const fs::path dir = fresh_dir("csv");
    auto files = emit_csv(r, dir);
    ASSERT_EQ(files.size(), 4u);
    for (std::size_t i = 0; i < 3; ++i) {
        CsvTable t = read_csv(files[i]);
        const Curve& c = r.curves[i];
        EXPECT_EQ(t.rows.size(), c.times.size());
        std::string text = read_file(files[i]);
        EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), static_cast<long>(c.times.size() + 1));
        EXPECT_EQ(text.find('\r'), std::string::npos);
        const std::string header = text.substr(0, text.find('\n'));
        EXPECT_EQ(header, c.engine == Engine::first_click ? kFirstClickCsvHeader
                                                          : kMemorylessCsvHeader);
        const std::size_t col = c.engine == Engine::first_click ? 4 : 1;
        for (std::size_t k = 0; k < t.rows.size(); ++k) {
            const double want = c.density[k];
            EXPECT_LE(std::abs(t.rows[k][col] - want), 1e-11 * std::abs(want) + 1e-300);
        }
    }
    const std::string summary = read_file(files[3]);
    EXPECT_EQ(summary.substr(0, summary.find('\n')), kSummaryCsvHeader);
    fs::remove_all(dir);
}

TEST(Report, svg_has_one_polyline_per_curve) {
    ScenarioReport r = run_scenario(scenario_fig3());
    const std::string svg = render_svg(r);
    std::size_t count = 0;
    for (auto p = svg.find("<polyline"); p != std::string::npos; p = svg.find("<polyline", p + 1)) {
        ++count;
    }
    EXPECT_EQ(count, r.curves.size());
    EXPECT_NE(svg.find("memoryless-point"), std::string::npos);
    EXPECT_NE(svg.find("first-click"), std::string::npos);
    EXPECT_EQ(svg.substr(svg.size() - 7), "</svg>\n");
    ScenarioReport empty = r;
    empty.curves.clear();
    EXPECT_THROW(render_svg(empty), UsageError);
}

TEST(Report, unwritable_directory_is_io_error) {
    ScenarioReport r = run_scenario(scenario_fig1());
    const fs::path blocker = fresh_dir("blocker");
    std::ofstream(blocker) << "file";
    EXPECT_THROW(emit_csv(r, blocker / "sub"), IoError);
    fs::remove(blocker);
}

TEST(Report, snapshots_dump) {
    RunOptions opt;
    opt.keep_snapshots = true;
    ScenarioReport r = run_scenario(scenario_fig1(), opt);
    const fs::path dir = fresh_dir("snap");
    auto files = emit_snapshots(r, dir);
    ASSERT_EQ(files.size(), 1u);
    CsvTable t = read_csv(files[0]);
    EXPECT_EQ(t.rows.size(), 8192u);
    EXPECT_EQ(t.header.size(), 1u + 8u + 1u);
    fs::remove_all(dir);
}
