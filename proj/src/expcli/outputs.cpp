#include "rosguard/expcli/outputs.hpp"

#include <boost/algorithm/string.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "rosguard/expcli/svg.hpp"

namespace rosguard::exp {

namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path &p)
{
    std::ofstream f(p, std::ios::binary);
    if (!f)
        throw std::runtime_error(fmt::format("cannot write '{}'", p.string()));
    return f;
}

enum class Axis { Threshold, Sampling, Regulation };

double axis_value(const ResultRow &r, Axis a)
{
    switch (a) {
    case Axis::Threshold:
        return r.threshold_ratio;
    case Axis::Sampling:
        return static_cast<double>(r.sampling_us);
    case Axis::Regulation:
        return static_cast<double>(r.regulation_us);
    }
    return 0;
}

std::string series_key(const ResultRow &r, Axis a)
{
    std::string k = fmt::format("{}/{}", r.policy, r.scheme);
    if (a != Axis::Sampling)
        k += fmt::format(" P={}", r.sampling_us);
    if (a != Axis::Regulation)
        k += fmt::format(" R={}", r.regulation_us);
    if (a != Axis::Threshold)
        k += fmt::format(" t={:.2f}", r.threshold_ratio);
    return k + fmt::format(" {}|{}", r.rt_workload, r.nrt_workload);
}

/// Rows of summary.csv, as far as the plots need them.
std::vector<ResultRow> read_summary(const fs::path &p)
{
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    std::vector<ResultRow> rows;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::vector<std::string> f;
        boost::split(f, line, boost::is_any_of(","));
        if (f.size() != 16)
            throw std::runtime_error("summary.csv: bad column count");
        ResultRow r;
        r.scenario_id = f[0];
        r.policy = f[1];
        r.scheme = f[2];
        r.sampling_us = std::stoll(f[3]);
        r.regulation_us = std::stoll(f[4]);
        r.threshold_ratio = std::stod(f[5]);
        r.rt_workload = f[6];
        r.nrt_workload = f[7];
        r.rt_slowdown = std::stod(f[8]);
        r.nrt_slowdown = std::stod(f[9]);
        if (!f[12].empty())
            r.delay = sim::DelaySummary{1, std::stoll(f[12]), std::stoll(f[13]), std::stoll(f[14])};
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_plots(const fs::path &dir)
{
    const auto rows = read_summary(dir / "summary.csv");
    if (rows.empty())
        return;
    std::set<double> thresholds, samplings, regulations;
    for (const auto &r : rows) {
        thresholds.insert(r.threshold_ratio);
        samplings.insert(static_cast<double>(r.sampling_us));
        regulations.insert(static_cast<double>(r.regulation_us));
    }
    Axis axis = Axis::Threshold;
    if (thresholds.size() < 2)
        axis = samplings.size() >= 2 ? Axis::Sampling : Axis::Regulation;
    const char *xlabel = axis == Axis::Threshold  ? "threshold ratio"
                         : axis == Axis::Sampling ? "sampling period (us)"
                                                  : "regulation period (us)";

    std::map<std::string, Series> slow, delay;
    for (const auto &r : rows) {
        const std::string k = series_key(r, axis);
        const double x = axis_value(r, axis);
        auto &rt = slow["rt " + k];
        rt.name = "rt " + k;
        rt.points.push_back({x, r.rt_slowdown, 0, 0});
        auto &nrt = slow["nrt " + k];
        nrt.name = "nrt " + k;
        nrt.points.push_back({x, r.nrt_slowdown, 0, 0});
        if (r.delay) {
            auto &d = delay[k];
            d.name = k;
            d.points.push_back({x, static_cast<double>(r.delay->median_us), static_cast<double>(r.delay->min_us),
                                static_cast<double>(r.delay->max_us)});
        }
    }
    auto finish = [](std::map<std::string, Series> &m) {
        std::vector<Series> out;
        for (auto &[_, s] : m) {
            std::sort(s.points.begin(), s.points.end(), [](const auto &a, const auto &b) { return a.x < b.x; });
            out.push_back(std::move(s));
        }
        return out;
    };
    const bool log_x = axis == Axis::Sampling;
    open_out(dir / "slowdown.svg") << line_chart_svg({"Slowdown ratio", xlabel, "slowdown", log_x}, finish(slow));
    if (!delay.empty())
        open_out(dir / "activation_delay.svg")
            << line_chart_svg({"Activation delay (min / median / max)", xlabel, "delay (us)", log_x}, finish(delay));
}

} // namespace

std::string summary_line(const ResultRow &r)
{
    std::string delays = ",,";
    if (r.delay)
        delays = fmt::format("{},{},{}", r.delay->min_us, r.delay->median_us, r.delay->max_us);
    return fmt::format("{},{},{},{},{},{:.2f},{},{},{:.6f},{:.6f},{},{},{},{}", r.scenario_id, r.policy, r.scheme,
                       r.sampling_us, r.regulation_us, r.threshold_ratio, r.rt_workload, r.nrt_workload,
                       r.rt_slowdown, r.nrt_slowdown, r.throttle_count, r.throttled_us, delays, r.samples);
}

void write_summary(std::ostream &os, std::vector<ResultRow> rows)
{
    std::sort(rows.begin(), rows.end(), [](const auto &a, const auto &b) { return a.scenario_id < b.scenario_id; });
    os << kSummaryHeader << '\n';
    for (const auto &r : rows)
        os << summary_line(r) << '\n';
}

void emit_outputs(const fs::path &dir, const std::vector<RunResult> &results, OutputFlags flags)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw std::runtime_error(fmt::format("cannot create output directory '{}'", dir.string()));

    std::vector<ResultRow> rows;
    for (const auto &r : results)
        rows.push_back(r.row);
    {
        auto f = open_out(dir / "summary.csv");
        write_summary(f, rows);
    }
    if (flags.traces) {
        fs::create_directories(dir / "traces", ec);
        for (const auto &r : results) {
            auto f = open_out(dir / "traces" / (r.row.scenario_id + ".csv"));
            r.trace.write_csv(f);
        }
    }
    if (flags.plots)
        write_plots(dir);
}

} // namespace rosguard::exp
