/*
 * Copyright 2026 the hetperf authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "hetperf/plot.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <vector>

namespace hetperf {

namespace {

bool parse_cell(const std::string& s, double& out) {
    if (s.empty())
        return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

std::string num(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 2);
    (void)ec;
    return std::string(buf, ptr);
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

}  // namespace

std::string svg_line_chart(const csvio::Table& table, const std::string& title) {
    const double width = 860, height = 520;
    const double ml = 70, mr = 190, mt = 40, mb = 50;
    const double pw = width - ml - mr, ph = height - mt - mb;

    struct Series {
        std::string name;
        std::vector<std::pair<double, double>> pts;
    };
    std::vector<Series> series;
    double xmin = std::numeric_limits<double>::max(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (std::size_t col = 1; col < table.header.size(); ++col) {
        Series s;
        s.name = table.header[col];
        for (const auto& row : table.rows) {
            double x, y;
            if (row.size() <= col || !parse_cell(row[0], x) || !parse_cell(row[col], y))
                continue;
            s.pts.emplace_back(x, y);
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
        if (!s.pts.empty())
            series.push_back(std::move(s));
    }
    std::string svg = "<svg xmlns='http://www.w3.org/2000/svg' width='" + num(width) +
                      "' height='" + num(height) + "'>\n";
    svg += "<rect width='100%' height='100%' fill='white'/>\n";
    svg += "<text x='" + num(ml) + "' y='24' font-family='sans-serif' font-size='16'>" +
           title + "</text>\n";
    if (series.empty()) {
        svg += "<text x='" + num(ml) + "' y='" + num(height / 2) +
               "' font-family='sans-serif' font-size='13'>no numeric data</text>\n</svg>\n";
        return svg;
    }
    if (xmax == xmin)
        xmax = xmin + 1.0;
    if (ymax == ymin)
        ymax = ymin + 1.0;
    auto sx = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
    auto sy = [&](double y) { return mt + ph - (y - ymin) / (ymax - ymin) * ph; };

    // axes and ticks
    svg += "<line x1='" + num(ml) + "' y1='" + num(mt + ph) + "' x2='" + num(ml + pw) +
           "' y2='" + num(mt + ph) + "' stroke='black'/>\n";
    svg += "<line x1='" + num(ml) + "' y1='" + num(mt) + "' x2='" + num(ml) + "' y2='" +
           num(mt + ph) + "' stroke='black'/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double xv = xmin + (xmax - xmin) * i / 5.0;
        const double yv = ymin + (ymax - ymin) * i / 5.0;
        svg += "<text x='" + num(sx(xv)) + "' y='" + num(mt + ph + 18) +
               "' font-family='sans-serif' font-size='11' text-anchor='middle'>" +
               csvio::format_double(std::round(xv * 1e4) / 1e4) + "</text>\n";
        svg += "<text x='" + num(ml - 6) + "' y='" + num(sy(yv) + 4) +
               "' font-family='sans-serif' font-size='11' text-anchor='end'>" +
               csvio::format_double(std::round(yv * 1e4) / 1e4) + "</text>\n";
        svg += "<line x1='" + num(ml) + "' y1='" + num(sy(yv)) + "' x2='" + num(ml + pw) +
               "' y2='" + num(sy(yv)) + "' stroke='#dddddd'/>\n";
    }
    svg += "<text x='" + num(ml + pw / 2) + "' y='" + num(height - 10) +
           "' font-family='sans-serif' font-size='12' text-anchor='middle'>" +
           table.header[0] + "</text>\n";

    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* color = kPalette[i % 10];
        std::string pts;
        for (const auto& [x, y] : series[i].pts)
            pts += num(sx(x)) + "," + num(sy(y)) + " ";
        svg += "<polyline fill='none' stroke='" + std::string(color) +
               "' stroke-width='1.5' points='" + pts + "'/>\n";
        const double ly = mt + 16.0 * static_cast<double>(i);
        svg += "<line x1='" + num(ml + pw + 8) + "' y1='" + num(ly) + "' x2='" +
               num(ml + pw + 28) + "' y2='" + num(ly) + "' stroke='" + color +
               "' stroke-width='2'/>\n";
        svg += "<text x='" + num(ml + pw + 32) + "' y='" + num(ly + 4) +
               "' font-family='sans-serif' font-size='11'>" + series[i].name +
               "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace hetperf
