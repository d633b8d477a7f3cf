#pragma once

// Minimal SVG 1.1 line-plot writer: axes, ticks, one polyline per series,
// and a small legend.  No styling options — the CSV output is authoritative
// and this exists only to eyeball sweep results.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace fsecrecy {

struct svg_series {
    std::string label;
    std::vector<std::pair<double, double>> points; // (x, y)
};

namespace detail {

inline std::string svg_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

inline std::string xml_escape(const std::string& s) {
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

} // namespace detail

inline void write_svg_lineplot(const std::string& path, const std::string& title,
                               const std::string& x_label,
                               const std::string& y_label,
                               const std::vector<svg_series>& series) {
    // Data bounds over all finite points.
    double x_lo = 0.0, x_hi = 1.0, y_lo = 0.0, y_hi = 1.0;
    bool any = false;
    for (const auto& s : series)
        for (auto [x, y] : s.points) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            if (!any) {
                x_lo = x_hi = x;
                y_lo = y_hi = y;
                any = true;
            } else {
                x_lo = std::min(x_lo, x);
                x_hi = std::max(x_hi, x);
                y_lo = std::min(y_lo, y);
                y_hi = std::max(y_hi, y);
            }
        }
    if (x_hi - x_lo < 1e-300) x_hi = x_lo + 1.0;
    if (y_hi - y_lo < 1e-300) y_hi = y_lo + 1.0;

    const double width = 800.0, height = 500.0;
    const double ml = 70.0, mr = 24.0, mt = 42.0, mb = 56.0;
    const double pw = width - ml - mr, ph = height - mt - mb;
    auto px = [&](double x) { return ml + (x - x_lo) / (x_hi - x_lo) * pw; };
    auto py = [&](double y) {
        return mt + ph - (y - y_lo) / (y_hi - y_lo) * ph;
    };

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};
    const int npal = 8;

    std::string body;
    body += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
            "width=\"800\" height=\"500\" viewBox=\"0 0 800 500\">\n";
    body += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"500\" fill=\"white\"/>\n";
    body += "<text x=\"400\" y=\"24\" text-anchor=\"middle\" "
            "font-family=\"sans-serif\" font-size=\"16\">" +
            detail::xml_escape(title) + "</text>\n";
    // Axes box
    body += "<rect x=\"" + detail::svg_num(ml) + "\" y=\"" + detail::svg_num(mt) +
            "\" width=\"" + detail::svg_num(pw) + "\" height=\"" +
            detail::svg_num(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
    // Ticks: 6 per axis
    for (int i = 0; i <= 5; ++i) {
        const double fx = x_lo + (x_hi - x_lo) * i / 5.0;
        const double fy = y_lo + (y_hi - y_lo) * i / 5.0;
        const double gx = px(fx), gy = py(fy);
        body += "<line x1=\"" + detail::svg_num(gx) + "\" y1=\"" +
                detail::svg_num(mt + ph) + "\" x2=\"" + detail::svg_num(gx) +
                "\" y2=\"" + detail::svg_num(mt + ph + 5) +
                "\" stroke=\"black\"/>\n";
        body += "<text x=\"" + detail::svg_num(gx) + "\" y=\"" +
                detail::svg_num(mt + ph + 20) +
                "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
                "font-size=\"11\">" +
                detail::svg_num(fx) + "</text>\n";
        body += "<line x1=\"" + detail::svg_num(ml - 5) + "\" y1=\"" +
                detail::svg_num(gy) + "\" x2=\"" + detail::svg_num(ml) +
                "\" y2=\"" + detail::svg_num(gy) + "\" stroke=\"black\"/>\n";
        body += "<text x=\"" + detail::svg_num(ml - 8) + "\" y=\"" +
                detail::svg_num(gy + 4) +
                "\" text-anchor=\"end\" font-family=\"sans-serif\" "
                "font-size=\"11\">" +
                detail::svg_num(fy) + "</text>\n";
    }
    body += "<text x=\"" + detail::svg_num(ml + pw / 2) + "\" y=\"" +
            detail::svg_num(height - 12) +
            "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
            "font-size=\"13\">" +
            detail::xml_escape(x_label) + "</text>\n";
    body += "<text x=\"18\" y=\"" + detail::svg_num(mt + ph / 2) +
            "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
            "font-size=\"13\" transform=\"rotate(-90 18 " +
            detail::svg_num(mt + ph / 2) + ")\">" +
            detail::xml_escape(y_label) + "</text>\n";
    // Series
    for (std::size_t k = 0; k < series.size(); ++k) {
        const char* color = palette[k % npal];
        std::string pts;
        for (auto [x, y] : series[k].points) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            if (!pts.empty()) pts += ' ';
            pts += detail::svg_num(px(x)) + "," + detail::svg_num(py(y));
        }
        body += "<polyline fill=\"none\" stroke=\"";
        body += color;
        body += "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
        // Legend row
        const double ly = mt + 14 + 16.0 * double(k);
        body += "<line x1=\"" + detail::svg_num(ml + pw - 150) + "\" y1=\"" +
                detail::svg_num(ly - 4) + "\" x2=\"" +
                detail::svg_num(ml + pw - 130) + "\" y2=\"" +
                detail::svg_num(ly - 4) + "\" stroke=\"";
        body += color;
        body += "\" stroke-width=\"2\"/>\n";
        body += "<text x=\"" + detail::svg_num(ml + pw - 125) + "\" y=\"" +
                detail::svg_num(ly) +
                "\" font-family=\"sans-serif\" font-size=\"11\">" +
                detail::xml_escape(series[k].label) + "</text>\n";
    }
    body += "</svg>\n";

    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw domain_error("write_svg_lineplot: cannot open " + tmp);
        out << body;
        if (!out.good()) {
            out.close();
            std::remove(tmp.c_str());
            throw domain_error("write_svg_lineplot: write failed for " + tmp);
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw domain_error("write_svg_lineplot: rename failed for " + path);
    }
}

} // namespace fsecrecy
