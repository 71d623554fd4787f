#include "rosguard/simkernel/trace.hpp"

#include <array>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace rosguard::sim {

namespace {

constexpr std::array<std::pair<TraceKind, std::string_view>, 14> kKindNames{{
    {TraceKind::CbStart, "cb_start"},
    {TraceKind::CbEnd, "cb_end"},
    {TraceKind::Publish, "publish"},
    {TraceKind::Deliver, "deliver"},
    {TraceKind::State, "state"},
    {TraceKind::IgnoredCmd, "ignored_cmd"},
    {TraceKind::Cmd, "cmd"},
    {TraceKind::Sample, "sample"},
    {TraceKind::Boundary, "boundary"},
    {TraceKind::RtRelease, "rt_release"},
    {TraceKind::RtEnable, "rt_enable"},
    {TraceKind::RtDisable, "rt_disable"},
    {TraceKind::WorkloadDone, "workload_done"},
    {TraceKind::Warn, "warn"},
}};

std::vector<std::string> split_csv_line(const std::string &line)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(std::move(cur));
    return out;
}

void check_field(const std::string &s)
{
    if (s.find_first_of(",\n") != std::string::npos)
        throw std::invalid_argument("trace field contains a separator: " + s);
}

} // namespace

std::string_view to_string(TraceKind kind)
{
    for (const auto &[k, n] : kKindNames)
        if (k == kind)
            return n;
    return "?";
}

std::optional<TraceKind> trace_kind_from_string(std::string_view s)
{
    for (const auto &[k, n] : kKindNames)
        if (n == s)
            return k;
    return std::nullopt;
}

void EventTrace::add(TimeUs t, TraceKind kind, int core, std::string node, std::string callback, std::string state,
                     std::string detail)
{
    check_field(node);
    check_field(callback);
    check_field(state);
    check_field(detail);
    records_.push_back(TraceRecord{t, records_.size(), kind, core, std::move(node), std::move(callback),
                                   std::move(state), std::move(detail)});
}

void EventTrace::write_csv(std::ostream &os) const
{
    os << kCsvHeader << '\n';
    for (const auto &r : records_) {
        os << r.t_us << ',' << r.seq << ',' << to_string(r.kind) << ',';
        if (r.core >= 0)
            os << r.core;
        os << ',' << r.node << ',' << r.callback << ',' << r.state << ',' << r.detail << '\n';
    }
}

std::string EventTrace::to_csv() const
{
    std::ostringstream os;
    write_csv(os);
    return os.str();
}

EventTrace EventTrace::read_csv(std::istream &is)
{
    EventTrace trace;
    std::string line;
    if (!std::getline(is, line) || line != kCsvHeader)
        throw std::runtime_error("trace csv: missing or unexpected header");
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        auto f = split_csv_line(line);
        if (f.size() != 8)
            throw std::runtime_error("trace csv: expected 8 columns in line: " + line);
        auto kind = trace_kind_from_string(f[2]);
        if (!kind)
            throw std::runtime_error("trace csv: unknown kind '" + f[2] + "'");
        TraceRecord r;
        r.t_us = std::stoll(f[0]);
        r.seq = std::stoull(f[1]);
        r.kind = *kind;
        r.core = f[3].empty() ? -1 : std::stoi(f[3]);
        r.node = f[4];
        r.callback = f[5];
        r.state = f[6];
        r.detail = f[7];
        if (r.seq != trace.records_.size())
            throw std::runtime_error("trace csv: non-contiguous seq");
        trace.records_.push_back(std::move(r));
    }
    return trace;
}

std::map<std::string, std::string> parse_detail(std::string_view detail)
{
    std::map<std::string, std::string> out;
    while (!detail.empty()) {
        auto semi = detail.find(';');
        auto item = detail.substr(0, semi);
        auto eq = item.find('=');
        if (eq == std::string_view::npos)
            out.emplace(std::string(item), std::string());
        else
            out.emplace(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
        if (semi == std::string_view::npos)
            break;
        detail.remove_prefix(semi + 1);
    }
    return out;
}

} // namespace rosguard::sim
