#include "risec/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

namespace risec {

namespace {

std::string num(double v) {
    if (v == 0.0) v = 0.0; // canonicalize the sign of zero
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string hex16(std::uint64_t v) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

const char* const kPalette[] = {"#1f6fb2", "#d1495b", "#2e8b57", "#b8860b",
                                "#6a4fa3", "#0f8b8d", "#8a5a44", "#45515c"};

struct Series {
    std::string name;
    std::size_t column = 0;
};

std::string x_label(SweepKind kind) {
    switch (kind) {
    case SweepKind::rate: return "target rate [bits/s/Hz]";
    case SweepKind::qos: return "QoS exponent (log scale)";
    case SweepKind::harq: return "retransmission limit";
    case SweepKind::sigma: return "loss-estimate deviation [dB]";
    case SweepKind::pon: return "on-state probability";
    }
    return "x";
}

} // namespace

std::string render_svg(const SweepTable& table) {
    if (table.rows.empty()) throw ConfigError("cannot plot an empty table");
    if (table.columns.empty()) throw ConfigError("cannot plot a table without columns");

    std::vector<Series> series;
    for (std::size_t j = 1; j < table.columns.size(); ++j)
        if (table.columns[j].rfind("ec", 0) == 0) series.push_back({table.columns[j], j});
    if (series.empty()) throw ConfigError("table has no plottable series");

    const bool log_x = table.kind == SweepKind::qos;
    auto x_of = [log_x](double v) { return log_x ? std::log10(v) : v; };

    double x_lo = 0.0, x_hi = 0.0, y_lo = 0.0, y_hi = 0.0;
    bool first = true;
    for (const auto& row : table.rows) {
        const double x = x_of(row[0]);
        for (const Series& s : series) {
            const double y = row[s.column];
            if (first) {
                x_lo = x_hi = x;
                y_lo = y_hi = y;
                first = false;
            } else {
                x_lo = std::min(x_lo, x);
                x_hi = std::max(x_hi, x);
                y_lo = std::min(y_lo, y);
                y_hi = std::max(y_hi, y);
            }
        }
    }
    if (x_hi - x_lo <= 0.0) {
        x_lo -= 0.5;
        x_hi += 0.5;
    }
    if (y_hi - y_lo <= 0.0) {
        const double pad = std::max(0.5, std::abs(y_hi) * 0.1);
        y_lo -= pad;
        y_hi += pad;
    } else {
        const double pad = (y_hi - y_lo) * 0.05;
        y_lo -= pad;
        y_hi += pad;
    }

    const double width = 840.0, height = 560.0;
    const double ml = 74.0, mr = 190.0, mt = 42.0, mb = 64.0;
    const double pw = width - ml - mr;
    const double ph = height - mt - mb;
    auto px = [&](double x) { return ml + pw * (x - x_lo) / (x_hi - x_lo); };
    auto py = [&](double y) { return mt + ph * (1.0 - (y - y_lo) / (y_hi - y_lo)); };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" +
           num(height) + "\" viewBox=\"0 0 " + num(width) + " " + num(height) + "\">\n";
    svg += "<rect width=\"" + num(width) + "\" height=\"" + num(height) +
           "\" fill=\"#ffffff\"/>\n";
    svg += "<text x=\"" + num(ml) + "\" y=\"26\" font-family=\"sans-serif\" font-size=\"16\" "
           "fill=\"#1a1a1a\">" +
           sweep_kind_name(table.kind) + " sweep (config " + hex16(table.config_hash) +
           ")</text>\n";

    // grid and ticks
    const int ticks = 5;
    for (int k = 0; k <= ticks; ++k) {
        const double fx = x_lo + (x_hi - x_lo) * k / ticks;
        const double fy = y_lo + (y_hi - y_lo) * k / ticks;
        svg += "<line x1=\"" + num(px(fx)) + "\" y1=\"" + num(mt) + "\" x2=\"" + num(px(fx)) +
               "\" y2=\"" + num(mt + ph) + "\" stroke=\"#e3e3e3\" stroke-width=\"1\"/>\n";
        svg += "<line x1=\"" + num(ml) + "\" y1=\"" + num(py(fy)) + "\" x2=\"" + num(ml + pw) +
               "\" y2=\"" + num(py(fy)) + "\" stroke=\"#e3e3e3\" stroke-width=\"1\"/>\n";
        const double x_value = log_x ? std::pow(10.0, fx) : fx;
        svg += "<text x=\"" + num(px(fx)) + "\" y=\"" + num(mt + ph + 20.0) +
               "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#444444\" "
               "text-anchor=\"middle\">" +
               num(x_value) + "</text>\n";
        svg += "<text x=\"" + num(ml - 8.0) + "\" y=\"" + num(py(fy) + 4.0) +
               "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#444444\" "
               "text-anchor=\"end\">" +
               num(fy) + "</text>\n";
    }
    svg += "<rect x=\"" + num(ml) + "\" y=\"" + num(mt) + "\" width=\"" + num(pw) +
           "\" height=\"" + num(ph) + "\" fill=\"none\" stroke=\"#888888\" stroke-width=\"1\"/>\n";

    // axis labels
    svg += "<text x=\"" + num(ml + pw / 2.0) + "\" y=\"" + num(height - 18.0) +
           "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#1a1a1a\" "
           "text-anchor=\"middle\">" +
           x_label(table.kind) + "</text>\n";
    svg += "<text x=\"20\" y=\"" + num(mt + ph / 2.0) +
           "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#1a1a1a\" "
           "text-anchor=\"middle\" transform=\"rotate(-90 20 " +
           num(mt + ph / 2.0) + ")\">effective capacity [bits/s/Hz]</text>\n";

    // series
    for (std::size_t si = 0; si < series.size(); ++si) {
        const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
        std::string points;
        for (const auto& row : table.rows) {
            if (!points.empty()) points += " ";
            points += num(px(x_of(row[0]))) + "," + num(py(row[series[si].column]));
        }
        svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
               "\" stroke-width=\"2\" points=\"" + points + "\"/>\n";
        const double ly = mt + 16.0 + 22.0 * static_cast<double>(si);
        svg += "<line x1=\"" + num(ml + pw + 14.0) + "\" y1=\"" + num(ly - 4.0) + "\" x2=\"" +
               num(ml + pw + 38.0) + "\" y2=\"" + num(ly - 4.0) + "\" stroke=\"" + color +
               "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + num(ml + pw + 44.0) + "\" y=\"" + num(ly) +
               "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#1a1a1a\">" +
               series[si].name + "</text>\n";
    }

    svg += "</svg>\n";
    return svg;
}

} // namespace risec
