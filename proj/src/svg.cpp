#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "common.hpp"

namespace alseg {
namespace {

constexpr int kWidth = 820;
constexpr int kHeight = 520;
constexpr int kLeft = 70, kRight = 30, kTop = 50, kBottom = 60;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

}  // namespace

void write_line_chart(const std::string& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<SvgSeries>& series) {
    if (series.empty()) throw DomainError("write_line_chart: no series");

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : series) {
        if (s.x.size() != s.y.size() || (!s.band.empty() && s.band.size() != s.y.size()))
            throw DomainError("write_line_chart: series '" + s.name + "' is ragged");
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            double lo = s.y[i] - (s.band.empty() ? 0.0 : s.band[i]);
            double hi = s.y[i] + (s.band.empty() ? 0.0 : s.band[i]);
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, lo);
            ymax = std::max(ymax, hi);
        }
    }
    if (xmin > xmax) throw DomainError("write_line_chart: all series empty");
    if (xmax == xmin) xmax = xmin + 1;
    double pad = (ymax - ymin) * 0.08;
    if (pad == 0) pad = 0.05;
    ymin -= pad;
    ymax += pad;

    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return kTop + (1.0 - (y - ymin) / (ymax - ymin)) * ph; };

    std::ofstream out(path);
    if (!out) throw IoError("write_line_chart: cannot write " + path);

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight
        << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"28\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"17\">" << title << "</text>\n";

    // Axes and ticks.
    out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft
        << "\" y2=\"" << kHeight - kBottom << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << kLeft << "\" y1=\"" << kHeight - kBottom << "\" x2=\""
        << kWidth - kRight << "\" y2=\"" << kHeight - kBottom << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        double fx = xmin + (xmax - xmin) * i / 5.0;
        double fy = ymin + (ymax - ymin) * i / 5.0;
        out << "<line x1=\"" << fmt(px(fx)) << "\" y1=\"" << kHeight - kBottom
            << "\" x2=\"" << fmt(px(fx)) << "\" y2=\"" << kHeight - kBottom + 5
            << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << fmt(px(fx)) << "\" y=\"" << kHeight - kBottom + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
            << fmt_tick(fx) << "</text>\n";
        out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << fmt(py(fy)) << "\" x2=\""
            << kLeft << "\" y2=\"" << fmt(py(fy)) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << kLeft - 9 << "\" y=\"" << fmt(py(fy) + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">"
            << fmt_tick(std::round(fy * 1000.0) / 1000.0) << "</text>\n";
    }
    out << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 15
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
        << x_label << "</text>\n";
    out << "<text x=\"18\" y=\"" << kTop + ph / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" "
        << "transform=\"rotate(-90 18 " << kTop + ph / 2 << ")\">" << y_label
        << "</text>\n";

    // Bands first so every polyline stays visible.
    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        if (s.band.empty() || s.x.empty()) continue;
        const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
        out << "<polygon fill=\"" << color << "\" fill-opacity=\"0.15\" stroke=\"none\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i)
            out << fmt(px(s.x[i])) << "," << fmt(py(s.y[i] + s.band[i])) << " ";
        for (std::size_t i = s.x.size(); i-- > 0;)
            out << fmt(px(s.x[i])) << "," << fmt(py(s.y[i] - s.band[i])) << " ";
        out << "\"/>\n";
    }

    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        if (s.x.empty()) continue;
        const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i)
            out << fmt(px(s.x[i])) << "," << fmt(py(s.y[i])) << " ";
        out << "\"/>\n";
    }

    // Legend.
    for (std::size_t si = 0; si < series.size(); ++si) {
        const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
        double ly = kTop + 16 + 18.0 * static_cast<double>(si);
        out << "<line x1=\"" << kLeft + 10 << "\" y1=\"" << fmt(ly - 4) << "\" x2=\""
            << kLeft + 34 << "\" y2=\"" << fmt(ly - 4) << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << kLeft + 40 << "\" y=\"" << fmt(ly)
            << "\" font-family=\"sans-serif\" font-size=\"13\">" << series[si].name
            << "</text>\n";
    }
    out << "</svg>\n";
    if (!out) throw IoError("write_line_chart: write failed for " + path);
}

}  // namespace alseg
