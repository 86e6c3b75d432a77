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

#include "toa/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "toa/errors.hpp"
#include "toa/format.hpp"

namespace toa {

namespace fs = std::filesystem;

namespace {

std::string num(double v) { return format_significant(v, kCsvDigits); }

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write '" + path.string() + "'");
    }
    out << content;
    out.flush();
    if (!out) {
        throw IoError("write failed for '" + path.string() + "'");
    }
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw IoError("cannot create output directory '" + dir.string() + "'");
    }
}

std::string svg_coord(double v) {
    std::array<char, 32> buf{};
    const int len = std::snprintf(buf.data(), buf.size(), "%.2f", v);
    std::string s(buf.data(), static_cast<std::size_t>(len));
    return s == "-0.00" ? "0.00" : s;
}

std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&':
                out += "&amp;";
                break;
            case '<':
                out += "&lt;";
                break;
            case '>':
                out += "&gt;";
                break;
            case '"':
                out += "&quot;";
                break;
            default:
                out += c;
        }
    }
    return out;
}

std::string legend_text(const Curve& c) {
    std::string s(engine_name(c.engine));
    if (c.delta_t) {
        s += " (dt = " + format_significant(*c.delta_t, 4) + " t0)";
    }
    return s;
}

// Round step (1, 2 or 5 times a power of ten) giving about `target` ticks.
double nice_step(double span, int target) {
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0}) {
        if (m * mag >= raw) {
            return m * mag;
        }
    }
    return 10.0 * mag;
}

}  // namespace

std::string curve_csv(const ScenarioReport& report, const Curve& curve) {
    std::string out;
    if (curve.engine != Engine::first_click) {
        out += kMemorylessCsvHeader;
        out += '\n';
        for (std::size_t i = 0; i < curve.times.size(); ++i) {
            out += num(curve.times[i]) + ',' + num(curve.density[i]) + '\n';
        }
        return out;
    }
    if (!curve.run_index || *curve.run_index >= report.first_click.size()) {
        throw UsageError("first-click curve '" + curve.label + "' has no run");
    }
    const FirstClickResult& r = report.first_click[*curve.run_index].result;
    out += kFirstClickCsvHeader;
    out += '\n';
    for (std::size_t i = 0; i < r.attempt_times.size(); ++i) {
        out += std::to_string(i) + ',' + num(r.attempt_times[i]) + ',' + num(r.click_weights[i]) +
               ',' + num(r.conditional_pmf[i]) + ',' + num(r.conditional_density[i]) + ',' +
               num(r.survival_cumulative[i]) + '\n';
    }
    return out;
}

std::string summary_csv(const ScenarioReport& report) {
    std::string out(kSummaryCsvHeader);
    out += '\n';
    for (const Curve& c : report.curves) {
        std::vector<std::string> f;
        f.push_back(c.label);
        f.emplace_back(engine_name(c.engine));
        f.push_back(c.delta_t ? num(*c.delta_t) : "");
        if (c.stats) {
            f.push_back(num(c.stats->peak_time));
            f.push_back(num(c.stats->peak_height));
            f.push_back(num(c.stats->fwhm));
            f.push_back(num(c.stats->mean_arrival));
            f.push_back(std::to_string(c.stats->local_maxima_count));
        } else {
            f.insert(f.end(), 5, "");
        }
        if (c.run_index) {
            const FirstClickResult& r = report.first_click.at(*c.run_index).result;
            f.push_back(num(r.total_click_probability));
            f.push_back(num(r.survival_probability));
            f.push_back(num(r.escaped_mass));
            f.push_back(num(r.conservation_residual()));
        } else {
            f.insert(f.end(), 4, "");
        }
        for (std::size_t i = 0; i < f.size(); ++i) {
            out += (i ? "," : "") + f[i];
        }
        out += '\n';
    }
    return out;
}

std::vector<fs::path> emit_csv(const ScenarioReport& report, const fs::path& dir) {
    ensure_dir(dir);
    std::vector<fs::path> written;
    for (const Curve& c : report.curves) {
        fs::path p = dir / (report.scenario.name + "_" + c.label + ".csv");
        write_file(p, curve_csv(report, c));
        written.push_back(std::move(p));
    }
    fs::path summary = dir / (report.scenario.name + "_summary.csv");
    write_file(summary, summary_csv(report));
    written.push_back(std::move(summary));
    return written;
}

std::string render_svg(const ScenarioReport& report) {
    if (report.curves.empty()) {
        throw UsageError("render_svg: report has no curves");
    }
    constexpr double width = 800, height = 500;
    constexpr double left = 80, right = 230, top = 40, bottom = 60;
    constexpr double pw = width - left - right, ph = height - top - bottom;
    static constexpr std::array<const char*, 8> palette{
        "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"};

    // Axes span the scenario window; first-click runs on a window extended
    // to a multiple of a coarse delta_t are clipped to it.
    const double t0 = report.scenario.window.t_start;
    const double t1 = report.scenario.window.t_end;
    double y_max = 0.0;
    for (const Curve& c : report.curves) {
        for (std::size_t i = 0; i < c.times.size(); ++i) {
            if (c.times[i] >= t0 && c.times[i] <= t1) {
                y_max = std::max(y_max, c.density[i]);
            }
        }
    }
    const double y_step = nice_step(y_max > 0.0 ? y_max : 1.0, 5);
    const double y_top = y_step * std::ceil((y_max > 0.0 ? y_max : 1.0) / y_step);
    const double x_step = nice_step(t1 - t0, 8);

    auto sx = [&](double t) { return left + (t - t0) / (t1 - t0) * pw; };
    auto sy = [&](double d) { return top + ph - d / y_top * ph; };

    std::ostringstream o;
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    o << "<title>" << xml_escape(report.scenario.name) << " arrival-time densities</title>\n";
    o << "<desc>";
    for (const auto& [k, v] : report.provenance) {
        o << xml_escape(k) << ": " << xml_escape(v) << "; ";
    }
    o << "</desc>\n";
    o << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
      << "\" fill=\"white\"/>\n";
    o << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"black\">\n";

    o << "<rect x=\"" << svg_coord(left) << "\" y=\"" << svg_coord(top) << "\" width=\""
      << svg_coord(pw) << "\" height=\"" << svg_coord(ph)
      << "\" fill=\"none\" stroke=\"black\"/>\n";
    const double first_x = x_step * std::ceil(t0 / x_step - 1e-9);
    for (double t = first_x; t <= t1 + 1e-9 * x_step; t += x_step) {
        const double tick = std::abs(t) < 1e-9 * x_step ? 0.0 : t;
        o << "<line x1=\"" << svg_coord(sx(tick)) << "\" y1=\"" << svg_coord(top + ph)
          << "\" x2=\"" << svg_coord(sx(tick)) << "\" y2=\"" << svg_coord(top + ph + 5)
          << "\" stroke=\"black\"/>\n";
        o << "<text x=\"" << svg_coord(sx(tick)) << "\" y=\"" << svg_coord(top + ph + 20)
          << "\" text-anchor=\"middle\">" << format_significant(tick, 4) << "</text>\n";
    }
    for (double d = 0.0; d <= y_top * (1 + 1e-9); d += y_step) {
        o << "<line x1=\"" << svg_coord(left - 5) << "\" y1=\"" << svg_coord(sy(d)) << "\" x2=\""
          << svg_coord(left) << "\" y2=\"" << svg_coord(sy(d)) << "\" stroke=\"black\"/>\n";
        o << "<text x=\"" << svg_coord(left - 8) << "\" y=\"" << svg_coord(sy(d) + 4)
          << "\" text-anchor=\"end\">" << format_significant(d, 4) << "</text>\n";
    }
    o << "<text x=\"" << svg_coord(left + pw / 2) << "\" y=\"" << svg_coord(height - 15)
      << "\" text-anchor=\"middle\">arrival time t [t0]</text>\n";
    o << "<text x=\"20\" y=\"" << svg_coord(top + ph / 2) << "\" text-anchor=\"middle\" "
      << "transform=\"rotate(-90 20 " << svg_coord(top + ph / 2)
      << ")\">probability density [1/t0]</text>\n";
    o << "</g>\n";

    for (std::size_t k = 0; k < report.curves.size(); ++k) {
        const Curve& c = report.curves[k];
        const char* color = palette[k % palette.size()];
        o << "<polyline id=\"" << xml_escape(c.label) << "\" fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (std::size_t i = 0; i < c.times.size(); ++i) {
            if (c.times[i] < t0 || c.times[i] > t1) {
                continue;
            }
            o << (first ? "" : " ") << svg_coord(sx(c.times[i])) << ','
              << svg_coord(sy(c.density[i]));
            first = false;
        }
        o << "\"/>\n";
    }

    o << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
    for (std::size_t k = 0; k < report.curves.size(); ++k) {
        const double y = top + 10 + 20.0 * static_cast<double>(k);
        const double x = left + pw + 15;
        o << "<line x1=\"" << svg_coord(x) << "\" y1=\"" << svg_coord(y) << "\" x2=\""
          << svg_coord(x + 25) << "\" y2=\"" << svg_coord(y) << "\" stroke=\""
          << palette[k % palette.size()] << "\" stroke-width=\"2\"/>\n";
        o << "<text x=\"" << svg_coord(x + 32) << "\" y=\"" << svg_coord(y + 4) << "\">"
          << xml_escape(legend_text(report.curves[k])) << "</text>\n";
    }
    o << "</g>\n";
    o << "</svg>\n";
    return o.str();
}

fs::path emit_svg(const ScenarioReport& report, const fs::path& dir) {
    const std::string svg = render_svg(report);
    ensure_dir(dir);
    fs::path p = dir / (report.scenario.name + ".svg");
    write_file(p, svg);
    return p;
}

std::vector<fs::path> emit_snapshots(const ScenarioReport& report, const fs::path& dir) {
    std::vector<fs::path> written;
    for (const Curve& c : report.curves) {
        if (!c.run_index) {
            continue;
        }
        const FirstClickResult& r = report.first_click.at(*c.run_index).result;
        if (r.conditioned_states.empty()) {
            continue;
        }
        ensure_dir(dir);
        const SpatialGrid& grid = r.conditioned_states.front().grid();
        std::string out = "x";
        for (std::size_t i = 0; i < r.conditioned_states.size(); ++i) {
            out += ",click_" + std::to_string(i);
        }
        if (r.final_state) {
            out += ",survival_end";
        }
        out += '\n';
        for (std::size_t j = 0; j < grid.size(); ++j) {
            out += num(grid.x(j));
            for (const WaveFunction& psi : r.conditioned_states) {
                out += ',' + num(std::norm(psi[j]));
            }
            if (r.final_state) {
                out += ',' + num(std::norm((*r.final_state)[j]));
            }
            out += '\n';
        }
        fs::path p = dir / (report.scenario.name + "_" + c.label + "_snapshots.csv");
        write_file(p, out);
        written.push_back(std::move(p));
    }
    return written;
}

CsvTable read_csv(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read '" + path.string() + "'");
    }
    CsvTable table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::vector<std::string_view> fields;
        std::string_view rest(line);
        while (true) {
            const auto comma = rest.find(',');
            fields.push_back(rest.substr(0, comma));
            if (comma == std::string_view::npos) {
                break;
            }
            rest.remove_prefix(comma + 1);
        }
        if (line_no == 1) {
            table.header.assign(fields.begin(), fields.end());
            continue;
        }
        if (fields.size() != table.header.size()) {
            throw ConfigError(path.string() + ": line " + std::to_string(line_no) +
                              " has the wrong number of fields");
        }
        std::vector<double> row;
        for (std::string_view f : fields) {
            auto v = parse_number(f);
            if (!v) {
                throw ConfigError(path.string() + ": line " + std::to_string(line_no) +
                                  ": not a number '" + std::string(f) + "'");
            }
            row.push_back(*v);
        }
        table.rows.push_back(std::move(row));
    }
    if (table.header.empty()) {
        throw ConfigError(path.string() + ": empty file");
    }
    return table;
}

}  // namespace toa
