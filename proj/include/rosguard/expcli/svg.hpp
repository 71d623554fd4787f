#ifndef ROSGUARD_EXPCLI_SVG_HPP
#define ROSGUARD_EXPCLI_SVG_HPP

#include <string>
#include <vector>

namespace rosguard::exp {

struct SeriesPoint {
    double x = 0.0;
    double y = 0.0;
    // Optional whiskers (min/max) drawn around y when lo <= y <= hi and lo < hi.
    double lo = 0.0;
    double hi = 0.0;
};

struct Series {
    std::string name;
    std::vector<SeriesPoint> points;
};

struct ChartSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
};

/// Self-contained SVG line chart with a legend.
std::string line_chart_svg(const ChartSpec &spec, const std::vector<Series> &series);

} // namespace rosguard::exp

#endif // ROSGUARD_EXPCLI_SVG_HPP
