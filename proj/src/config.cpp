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

#include "toa/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "toa/errors.hpp"
#include "toa/format.hpp"

namespace toa {

namespace {

struct Entry {
    std::string value;
    std::size_t line = 0;
    bool used = false;
};

struct Section {
    std::string name;
    std::size_t line = 0;
    std::map<std::string, Entry, std::less<>> entries;
};

std::string_view trim(std::string_view s) {
    const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
    while (!s.empty() && is_space(s.front())) {
        s.remove_prefix(1);
    }
    while (!s.empty() && is_space(s.back())) {
        s.remove_suffix(1);
    }
    return s;
}

[[noreturn]] void fail(std::size_t line, std::string_view message) {
    throw ConfigError("line " + std::to_string(line) + ": " + std::string(message));
}

std::vector<std::string_view> split_list(std::string_view s) {
    std::vector<std::string_view> out;
    while (true) {
        const auto comma = s.find(',');
        out.push_back(trim(s.substr(0, comma)));
        if (comma == std::string_view::npos) {
            break;
        }
        s.remove_prefix(comma + 1);
    }
    return out;
}

const std::set<std::string, std::less<>>& allowed_keys(std::string_view section) {
    static const std::set<std::string, std::less<>> run{
        "name", "engines", "delta_t", "time_samples", "output_dir", "csv", "svg", "snapshots"};
    static const std::set<std::string, std::less<>> grid{"x_min", "x_max", "n_points",
                                                         "pad_points"};
    static const std::set<std::string, std::less<>> window{"t_start", "t_end"};
    static const std::set<std::string, std::less<>> detector{"a", "b"};
    static const std::set<std::string, std::less<>> packet{"x0", "p0", "sigma0", "weight_re",
                                                           "weight_im"};
    if (section == "run") {
        return run;
    }
    if (section == "grid") {
        return grid;
    }
    if (section == "window") {
        return window;
    }
    if (section == "detector") {
        return detector;
    }
    return packet;
}

std::optional<std::size_t> packet_index(std::string_view section) {
    constexpr std::string_view prefix = "packet.";
    if (section.substr(0, prefix.size()) != prefix) {
        return std::nullopt;
    }
    const std::string_view digits = section.substr(prefix.size());
    if (digits.empty() || (digits.size() > 1 && digits.front() == '0')) {
        return std::nullopt;
    }
    std::size_t index = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), index);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
        return std::nullopt;
    }
    return index;
}

class Reader {
   public:
    explicit Reader(Section& section) : section_(section) {}

    const Entry* find(std::string_view key) {
        auto it = section_.entries.find(key);
        if (it == section_.entries.end()) {
            return nullptr;
        }
        it->second.used = true;
        return &it->second;
    }

    const Entry& require(std::string_view key) {
        const Entry* e = find(key);
        if (e == nullptr) {
            fail(section_.line,
                 "[" + section_.name + "] is missing required key '" + std::string(key) + "'");
        }
        return *e;
    }

    double number(const Entry& e, std::string_view key) {
        auto v = parse_number(e.value);
        if (!v) {
            fail(e.line, "'" + std::string(key) + "' expects a number, got '" + e.value + "'");
        }
        return *v;
    }

    double number(std::string_view key) { return number(require(key), key); }

    std::optional<double> optional_number(std::string_view key) {
        const Entry* e = find(key);
        if (e == nullptr) {
            return std::nullopt;
        }
        return number(*e, key);
    }

    std::size_t count(const Entry& e, std::string_view key) {
        std::size_t v = 0;
        const std::string& s = e.value;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
            fail(e.line,
                 "'" + std::string(key) + "' expects a non-negative integer, got '" + s + "'");
        }
        return v;
    }

    bool flag(std::string_view key, bool fallback) {
        const Entry* e = find(key);
        if (e == nullptr) {
            return fallback;
        }
        if (e->value == "true") {
            return true;
        }
        if (e->value == "false") {
            return false;
        }
        fail(e->line, "'" + std::string(key) + "' expects true or false, got '" + e->value + "'");
    }

    void reject_unused() const {
        for (const auto& [key, entry] : section_.entries) {
            if (!entry.used) {
                fail(entry.line, "key '" + key + "' is not used in [" + section_.name + "]");
            }
        }
    }

   private:
    Section& section_;
};

std::vector<Section> tokenize(std::string_view text) {
    std::vector<Section> sections;
    std::set<std::string, std::less<>> seen;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = trim(text.substr(0, nl));
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        ++line_no;
        if (line.empty() || line.front() == '#') {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                fail(line_no, "malformed section header '" + std::string(line) + "'");
            }
            std::string name(trim(line.substr(1, line.size() - 2)));
            const bool known = name == "run" || name == "grid" || name == "window" ||
                               name == "detector" || packet_index(name).has_value();
            if (!known) {
                fail(line_no, "unknown section [" + name + "]");
            }
            if (!seen.insert(name).second) {
                fail(line_no, "section [" + name + "] appears twice");
            }
            sections.push_back(Section{std::move(name), line_no, {}});
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            fail(line_no, "expected 'key = value', got '" + std::string(line) + "'");
        }
        if (sections.empty()) {
            fail(line_no, "key outside of any section");
        }
        Section& section = sections.back();
        std::string key(trim(line.substr(0, eq)));
        std::string value(trim(line.substr(eq + 1)));
        if (allowed_keys(section.name).count(key) == 0) {
            fail(line_no, "unknown key '" + key + "' in [" + section.name + "]");
        }
        if (value.empty()) {
            fail(line_no, "key '" + key + "' has an empty value");
        }
        if (!section.entries.emplace(key, Entry{value, line_no, false}).second) {
            fail(line_no, "key '" + key + "' appears twice in [" + section.name + "]");
        }
    }
    return sections;
}

std::string join_numbers(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        out += (i ? ", " : "") + format_shortest(values[i]);
    }
    return out;
}

}  // namespace

RunConfig parse_config(std::string_view text) {
    std::vector<Section> sections = tokenize(text);
    auto find_section = [&](std::string_view name) -> Section* {
        for (auto& s : sections) {
            if (s.name == name) {
                return &s;
            }
        }
        return nullptr;
    };
    auto require_section = [&](std::string_view name) -> Section& {
        Section* s = find_section(name);
        if (s == nullptr) {
            throw ConfigError("missing section [" + std::string(name) + "]");
        }
        return *s;
    };

    RunConfig config;
    Scenario& sc = config.scenario;

    {
        Reader r(require_section("run"));
        sc.name = r.require("name").value;
        const Entry& engines = r.require("engines");
        for (std::string_view token : split_list(engines.value)) {
            auto e = parse_engine(token);
            if (!e) {
                fail(engines.line, "unknown engine '" + std::string(token) +
                                       "' (expected memoryless-point, memoryless-finite or "
                                       "first-click)");
            }
            if (sc.has_engine(*e)) {
                fail(engines.line, "engine '" + std::string(token) + "' listed twice");
            }
            sc.engines.push_back(*e);
        }
        if (const Entry* dts = r.find("delta_t")) {
            for (std::string_view token : split_list(dts->value)) {
                auto v = parse_number(token);
                if (!v) {
                    fail(dts->line, "'delta_t' expects numbers, got '" + std::string(token) + "'");
                }
                if (!(*v > 0.0)) {
                    fail(dts->line, "'delta_t' values must be positive");
                }
                sc.delta_ts.push_back(*v);
            }
        } else if (sc.has_engine(Engine::first_click)) {
            fail(engines.line, "'delta_t' is required when the first-click engine is selected");
        }
        if (const Entry* e = r.find("time_samples")) {
            sc.time_samples = r.count(*e, "time_samples");
            if (sc.time_samples < 16) {
                fail(e->line, "'time_samples' must be at least 16");
            }
        }
        if (const Entry* e = r.find("output_dir")) {
            config.output_dir = e->value;
        }
        config.csv = r.flag("csv", true);
        config.svg = r.flag("svg", true);
        config.snapshots = r.flag("snapshots", false);
        r.reject_unused();
    }

    {
        Section& s = require_section("grid");
        Reader r(s);
        sc.grid.x_min = r.number("x_min");
        sc.grid.x_max = r.number("x_max");
        const Entry& n = r.require("n_points");
        sc.grid.n_points = r.count(n, "n_points");
        if (sc.grid.n_points < 8 || !is_power_of_two(sc.grid.n_points)) {
            fail(n.line, "'n_points' must be a power of two >= 8");
        }
        if (!(sc.grid.x_max > sc.grid.x_min)) {
            fail(s.line, "'x_max' must exceed 'x_min'");
        }
        if (const Entry* pad = r.find("pad_points"); pad != nullptr && pad->value != "auto") {
            const std::size_t p = r.count(*pad, "pad_points");
            if (!is_power_of_two(sc.grid.n_points + 2 * p)) {
                fail(pad->line, "'pad_points' must make n_points + 2*pad_points a power of two");
            }
            sc.grid.pad_points = p;
        }
        r.reject_unused();
    }

    {
        Section& s = require_section("window");
        Reader r(s);
        sc.window.t_start = r.number("t_start");
        sc.window.t_end = r.number("t_end");
        if (!(sc.window.t_end > sc.window.t_start)) {
            fail(s.line, "'t_end' must exceed 't_start'");
        }
        r.reject_unused();
    }

    {
        Section& s = require_section("detector");
        Reader r(s);
        sc.detector.a = r.number("a");
        sc.detector.b = r.number("b");
        sc.detector.kind = DetectorKind::finite_size;
        if (!(sc.detector.a < sc.detector.b)) {
            fail(s.line, "detector needs a < b");
        }
        r.reject_unused();
    }

    std::vector<std::pair<std::size_t, Section*>> packets;
    for (auto& s : sections) {
        if (auto idx = packet_index(s.name)) {
            packets.emplace_back(*idx, &s);
        }
    }
    std::sort(packets.begin(), packets.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });
    if (packets.empty()) {
        throw ConfigError("missing section [packet.0]");
    }
    for (std::size_t k = 0; k < packets.size(); ++k) {
        if (packets[k].first != k) {
            fail(packets[k].second->line, "packets must be numbered 0, 1, 2, ... without gaps; "
                                          "expected [packet." + std::to_string(k) + "]");
        }
        Reader r(*packets[k].second);
        GaussianSpec g;
        g.x0 = r.number("x0");
        g.p0 = r.number("p0");
        const Entry& sigma = r.require("sigma0");
        g.sigma0 = r.number(sigma, "sigma0");
        if (!(g.sigma0 > 0.0)) {
            fail(sigma.line, "'sigma0' must be positive");
        }
        g.weight = complex(r.optional_number("weight_re").value_or(1.0),
                           r.optional_number("weight_im").value_or(0.0));
        if (g.weight == complex(0.0, 0.0)) {
            fail(packets[k].second->line, "packet weight must be non-zero");
        }
        r.reject_unused();
        sc.initial_state.packets.push_back(g);
    }

    try {
        validate(sc);
    } catch (const ConfigError& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return config;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read config file '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_config(buf.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

constexpr std::string_view kLicenseHeader =
    "# Copyright 2026 The toa-firstclick Authors\n"
    "#\n"
    "# Licensed under the Apache License, Version 2.0 (the \"License\");\n"
    "# you may not use this file except in compliance with the License.\n"
    "# You may obtain a copy of the License at\n"
    "#\n"
    "#      http://www.apache.org/licenses/LICENSE-2.0\n"
    "#\n"
    "# Unless required by applicable law or agreed to in writing, software\n"
    "# distributed under the License is distributed on an \"AS IS\" BASIS,\n"
    "# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.\n"
    "# See the License for the specific language governing permissions and\n"
    "# limitations under the License.\n";

std::string serialize_config(const RunConfig& config) {
    const Scenario& sc = config.scenario;
    std::ostringstream out;
    out << kLicenseHeader << "\n[run]\n";
    out << "name = " << sc.name << "\n";
    out << "engines = ";
    for (std::size_t i = 0; i < sc.engines.size(); ++i) {
        out << (i ? ", " : "") << engine_name(sc.engines[i]);
    }
    out << "\n";
    if (!sc.delta_ts.empty()) {
        out << "delta_t = " << join_numbers(sc.delta_ts) << "\n";
    }
    out << "time_samples = " << sc.time_samples << "\n";
    if (config.output_dir) {
        out << "output_dir = " << *config.output_dir << "\n";
    }
    out << "csv = " << (config.csv ? "true" : "false") << "\n";
    out << "svg = " << (config.svg ? "true" : "false") << "\n";
    out << "snapshots = " << (config.snapshots ? "true" : "false") << "\n";

    out << "\n[grid]\n";
    out << "x_min = " << format_shortest(sc.grid.x_min) << "\n";
    out << "x_max = " << format_shortest(sc.grid.x_max) << "\n";
    out << "n_points = " << sc.grid.n_points << "\n";
    out << "pad_points = "
        << (sc.grid.pad_points ? std::to_string(*sc.grid.pad_points) : std::string("auto"))
        << "\n";

    out << "\n[window]\n";
    out << "t_start = " << format_shortest(sc.window.t_start) << "\n";
    out << "t_end = " << format_shortest(sc.window.t_end) << "\n";

    out << "\n[detector]\n";
    out << "a = " << format_shortest(sc.detector.a) << "\n";
    out << "b = " << format_shortest(sc.detector.b) << "\n";

    for (std::size_t k = 0; k < sc.initial_state.packets.size(); ++k) {
        const GaussianSpec& g = sc.initial_state.packets[k];
        out << "\n[packet." << k << "]\n";
        out << "x0 = " << format_shortest(g.x0) << "\n";
        out << "p0 = " << format_shortest(g.p0) << "\n";
        out << "sigma0 = " << format_shortest(g.sigma0) << "\n";
        out << "weight_re = " << format_shortest(g.weight.real()) << "\n";
        out << "weight_im = " << format_shortest(g.weight.imag()) << "\n";
    }
    return out.str();
}

}  // namespace toa
