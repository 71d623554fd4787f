#include "rosguard/expcli/svg.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace rosguard::exp {

namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 440;
constexpr double kLeft = 70;
constexpr double kRight = 200;
constexpr double kTop = 40;
constexpr double kBottom = 60;

constexpr std::array kColors{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                             "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string escape(const std::string &s)
{
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

bool has_whisker(const SeriesPoint &p)
{
    return p.lo < p.hi && p.lo <= p.y && p.y <= p.hi;
}

} // namespace

std::string line_chart_svg(const ChartSpec &spec, const std::vector<Series> &series)
{
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    auto fx = [&](double x) { return spec.log_x ? std::log10(std::max(x, 1e-12)) : x; };
    for (const auto &s : series)
        for (const auto &p : s.points) {
            x0 = std::min(x0, fx(p.x));
            x1 = std::max(x1, fx(p.x));
            y0 = std::min(y0, has_whisker(p) ? p.lo : p.y);
            y1 = std::max(y1, has_whisker(p) ? p.hi : p.y);
        }
    if (!std::isfinite(x0)) {
        x0 = y0 = 0;
        x1 = y1 = 1;
    }
    if (x1 <= x0)
        x1 = x0 + 1;
    if (y1 <= y0)
        y1 = y0 + 1;
    const double pad = (y1 - y0) * 0.05;
    y0 -= pad;
    y1 += pad;

    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (fx(x) - x0) / (x1 - x0) * pw; };
    auto py = [&](double y) { return kTop + (1.0 - (y - y0) / (y1 - y0)) * ph; };

    std::string svg = fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" "
                                  "font-family=\"sans-serif\" font-size=\"12\">\n",
                                  kWidth, kHeight);
    svg += fmt::format("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    svg += fmt::format("<text x=\"{}\" y=\"22\" font-size=\"15\">{}</text>\n", kLeft, escape(spec.title));
    svg += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n", kLeft,
                       kTop, pw, ph);

    for (int i = 0; i <= 5; ++i) {
        const double yv = y0 + (y1 - y0) * i / 5.0;
        const double xv = x0 + (x1 - x0) * i / 5.0;
        const double xl = spec.log_x ? std::pow(10.0, xv) : xv;
        svg += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{2:.1f}\" y2=\"{1:.1f}\" stroke=\"#ddd\"/>\n", kLeft,
                           py(yv), kLeft + pw);
        svg += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">{:.4g}</text>\n", kLeft - 6,
                           py(yv) + 4, yv);
        svg += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{:.4g}</text>\n",
                           kLeft + (xv - x0) / (x1 - x0) * pw, kTop + ph + 18, xl);
    }
    svg += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{}</text>\n", kLeft + pw / 2,
                       kHeight - 15, escape(spec.x_label));
    svg += fmt::format("<text x=\"16\" y=\"{0:.1f}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {0:.1f})\">{1}"
                       "</text>\n",
                       kTop + ph / 2, escape(spec.y_label));

    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto &s = series[i];
        const char *color = kColors[i % kColors.size()];
        std::string pts;
        for (const auto &p : s.points)
            pts += fmt::format("{:.1f},{:.1f} ", px(p.x), py(p.y));
        svg += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n", color, pts);
        for (const auto &p : s.points) {
            svg += fmt::format("<circle cx=\"{:.1f}\" cy=\"{:.1f}\" r=\"3\" fill=\"{}\"/>\n", px(p.x), py(p.y), color);
            if (has_whisker(p))
                svg += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{0:.1f}\" y2=\"{2:.1f}\" stroke=\"{3}\"/>\n",
                                   px(p.x), py(p.lo), py(p.hi), color);
        }
        const double ly = kTop + 14 + 18.0 * static_cast<double>(i);
        svg += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{2:.1f}\" y2=\"{1:.1f}\" stroke=\"{3}\" "
                           "stroke-width=\"2\"/>\n",
                           kLeft + pw + 12, ly, kLeft + pw + 32, color);
        svg += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\">{}</text>\n", kLeft + pw + 38, ly + 4, escape(s.name));
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace rosguard::exp
