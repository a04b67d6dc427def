// Copyright 2026 The rydpulse Authors
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

#include "rydpulse/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace rydpulse {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 40.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 60.0;

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                          "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string fmt(double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.6g", v);
    return buffer;
}

} // namespace

std::string render_front_svg(const std::vector<FrontSeries>& series) {
    double x_min = std::numeric_limits<double>::infinity();
    double x_max = -std::numeric_limits<double>::infinity();
    double y_min = std::numeric_limits<double>::infinity();
    double y_max = -std::numeric_limits<double>::infinity();
    std::size_t total = 0;
    for (const auto& s : series) {
        for (const auto& [g, f] : s.points) {
            ++total;
            x_min = std::min(x_min, g);
            x_max = std::max(x_max, g);
            const double fp = std::max(f, 1e-16); // log axis needs f > 0
            y_min = std::min(y_min, fp);
            y_max = std::max(y_max, fp);
        }
    }
    if (total == 0) {
        throw std::runtime_error("render_front_svg: no points to plot");
    }
    if (x_min == x_max) {
        x_min -= 0.5;
        x_max += 0.5;
    }
    double ly_min = std::log10(y_min);
    double ly_max = std::log10(y_max);
    if (ly_max - ly_min < 0.2) {
        ly_min -= 0.5;
        ly_max += 0.5;
    }
    const double x_pad = 0.05 * (x_max - x_min);
    const double ly_pad = 0.05 * (ly_max - ly_min);
    x_min -= x_pad;
    x_max += x_pad;
    ly_min -= ly_pad;
    ly_max += ly_pad;

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto sx = [&](double g) {
        return kLeft + plot_w * (g - x_min) / (x_max - x_min);
    };
    auto sy = [&](double f) {
        const double lf = std::log10(std::max(f, 1e-16));
        return kTop + plot_h * (1.0 - (lf - ly_min) / (ly_max - ly_min));
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
        << kHeight << "\">\n";
    svg << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" fill=\"white\"/>\n";
    svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\""
        << plot_w << "\" height=\"" << plot_h
        << "\" fill=\"none\" stroke=\"black\"/>\n";

    // x ticks: 6 evenly spaced
    for (int i = 0; i <= 5; ++i) {
        const double g = x_min + (x_max - x_min) * i / 5.0;
        const double px = sx(g);
        svg << "<line x1=\"" << fmt(px) << "\" y1=\"" << kTop + plot_h
            << "\" x2=\"" << fmt(px) << "\" y2=\"" << kTop + plot_h + 6
            << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << fmt(px) << "\" y=\"" << kTop + plot_h + 22
            << "\" font-size=\"12\" text-anchor=\"middle\">" << fmt(g)
            << "</text>\n";
    }
    // y ticks: one per decade inside range
    for (int d = static_cast<int>(std::floor(ly_min));
         d <= static_cast<int>(std::ceil(ly_max)); ++d) {
        if (d < ly_min || d > ly_max) continue;
        const double py = kTop + plot_h * (1.0 - (d - ly_min) / (ly_max - ly_min));
        svg << "<line x1=\"" << kLeft - 6 << "\" y1=\"" << fmt(py) << "\" x2=\""
            << kLeft << "\" y2=\"" << fmt(py) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << kLeft - 10 << "\" y=\"" << fmt(py + 4)
            << "\" font-size=\"12\" text-anchor=\"end\">1e" << d
            << "</text>\n";
    }
    svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 15
        << "\" font-size=\"14\" text-anchor=\"middle\">G (time in Rydberg "
           "state, 1/f_max)</text>\n";
    svg << "<text x=\"20\" y=\"" << kTop + plot_h / 2
        << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 "
           "20 "
        << kTop + plot_h / 2 << ")\">F (infidelity, log scale)</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kPalette[s % (sizeof(kPalette) / sizeof(*kPalette))];
        for (const auto& [g, f] : series[s].points) {
            svg << "<circle cx=\"" << fmt(sx(g)) << "\" cy=\"" << fmt(sy(f))
                << "\" r=\"3\" fill=\"" << color << "\" fill-opacity=\"0.8\"/>\n";
        }
        const double lx = kLeft + plot_w - 150.0;
        const double ly = kTop + 18.0 * (static_cast<double>(s) + 1.0);
        svg << "<circle cx=\"" << fmt(lx) << "\" cy=\"" << fmt(ly - 4)
            << "\" r=\"4\" fill=\"" << color << "\"/>\n";
        svg << "<text x=\"" << fmt(lx + 10) << "\" y=\"" << fmt(ly)
            << "\" font-size=\"12\">" << series[s].label << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void write_front_svg(const std::vector<FrontSeries>& series,
                     const std::string& path) {
    const std::string content = render_front_svg(series);
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write svg file: " + path);
    }
    out << content;
}

} // namespace rydpulse
