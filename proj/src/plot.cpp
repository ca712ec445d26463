#include "omsent/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

#include "omsent/errors.hpp"
#include "omsent/run.hpp"

namespace omsent {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 64.0;
constexpr double kRight = 180.0;
constexpr double kTop = 36.0;
constexpr double kBottom = 52.0;

constexpr std::array<const char*, 8> kColors{"#1f4e9c", "#c0392b", "#2e8b57", "#222222",
                                             "#8e44ad", "#d35400", "#16a085", "#7f8c8d"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", std::abs(v) < 1e-12 ? 0.0 : v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

double nice_step(double span) {
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (raw <= m * mag) return m * mag;
    }
    return 10.0 * mag;
}

}  // namespace

std::string render_plot(const std::vector<PlotSeries>& series, const std::string& title) {
    if (series.empty()) throw DomainError("render_plot needs at least one series");
    double xmin = 0.0, xmax = 0.0, ymax = 0.0;
    bool first = true;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (first) {
                xmin = xmax = s.x[i];
                first = false;
            }
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    }
    if (xmax <= xmin) xmax = xmin + 1.0;
    const double ystep = ymax > 0.0 ? nice_step(ymax) : 0.2;
    ymax = ymax > 0.0 ? std::ceil(ymax / ystep) * ystep : 1.0;
    const double xstep = nice_step(xmax - xmin);

    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return kTop + ph - y / ymax * ph; };

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
           num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!title.empty()) {
        svg += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"22\" text-anchor=\"middle\" "
               "font-family=\"sans-serif\" font-size=\"14\">" + escape(title) + "</text>\n";
    }

    svg += "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
    for (double y = 0.0; y <= ymax + 1e-9 * ymax; y += ystep) {
        svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(py(y)) + "\" x2=\"" + num(kLeft + pw) +
               "\" y2=\"" + num(py(y)) + "\"/>\n";
    }
    svg += "</g>\n";
    svg += "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333333\">\n";
    for (double y = 0.0; y <= ymax + 1e-9 * ymax; y += ystep) {
        svg += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(py(y) + 4) +
               "\" text-anchor=\"end\">" + tick_label(y) + "</text>\n";
    }
    for (double x = std::ceil(xmin / xstep) * xstep; x <= xmax + 1e-9; x += xstep) {
        svg += "<text x=\"" + num(px(x)) + "\" y=\"" + num(kTop + ph + 16) +
               "\" text-anchor=\"middle\">" + tick_label(x) + "</text>\n";
    }
    svg += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"" + num(kHeight - 12) +
           "\" text-anchor=\"middle\" font-size=\"13\">\xce\xba t</text>\n";
    svg += "<text x=\"16\" y=\"" + num(kTop + ph / 2) + "\" text-anchor=\"middle\" font-size=\"13\" "
           "transform=\"rotate(-90 16 " + num(kTop + ph / 2) + ")\">E_N</text>\n";
    svg += "</g>\n";
    svg += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(pw) +
           "\" height=\"" + num(ph) + "\" fill=\"none\" stroke=\"#333333\"/>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* color = kColors[k % kColors.size()];
        svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
               "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (i > 0) svg += " ";
            svg += num(px(s.x[i])) + "," + num(py(s.y[i]));
        }
        svg += "\"/>\n";
    }

    svg += "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"11\">\n";
    for (std::size_t k = 0; k < series.size(); ++k) {
        const double y = kTop + 12.0 + 18.0 * static_cast<double>(k);
        const double x = kLeft + pw + 12.0;
        svg += "<line x1=\"" + num(x) + "\" y1=\"" + num(y) + "\" x2=\"" + num(x + 22) + "\" y2=\"" +
               num(y) + "\" stroke=\"" + kColors[k % kColors.size()] + "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + num(x + 28) + "\" y=\"" + num(y + 4) + "\">" +
               escape(series[k].label) + "</text>\n";
    }
    svg += "</g>\n</svg>\n";
    return svg;
}

PlotSeries load_plot_series(const std::string& path, const std::string& label) {
    const CsvTable table = read_csv_file(path);
    const auto xi = table.column("kappa_t", path);
    const auto yi = table.column("E_N", path);
    PlotSeries s;
    s.label = label;
    for (const auto& row : table.rows) {
        s.x.push_back(row[xi]);
        s.y.push_back(row[yi]);
    }
    return s;
}

}  // namespace omsent
