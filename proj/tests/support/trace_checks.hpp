#ifndef ROSGUARD_TESTS_TRACE_CHECKS_HPP
#define ROSGUARD_TESTS_TRACE_CHECKS_HPP

// Trace-replay checkers shared by the unit and acceptance suites. Each returns
// an empty string when the property holds, otherwise the first violation.

#include <fmt/format.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rosguard/simkernel/trace.hpp"

namespace rosguard::testing {

using sim::TraceKind;
using sim::TraceRecord;

inline std::string detail_of(const TraceRecord &r, const std::string &key)
{
    auto d = sim::parse_detail(r.detail);
    auto it = d.find(key);
    return it == d.end() ? std::string() : it->second;
}

/// No NCT or PMC slice of a node starts or stays open inside a Thr window.
inline std::string check_no_work_while_throttled(const sim::EventTrace &trace)
{
    std::map<std::string, bool> in_thr;
    std::map<std::string, std::string> running; // node -> callback with an open slice
    for (const auto &r : trace.records()) {
        if (r.kind == TraceKind::State) {
            in_thr[r.node] = r.state == "Thr";
            if (r.state == "Thr" && (running[r.node] == "NCT" || running[r.node] == "PMC"))
                return fmt::format("seq {}: {} enters Thr while {} holds the core", r.seq, r.node, running[r.node]);
        } else if (r.kind == TraceKind::CbStart) {
            running[r.node] = r.callback;
            if (in_thr[r.node] && (r.callback == "NCT" || r.callback == "PMC"))
                return fmt::format("seq {}: {} slice of {} inside Thr", r.seq, r.callback, r.node);
        } else if (r.kind == TraceKind::CbEnd) {
            if (running[r.node] == r.callback)
                running[r.node].clear();
        }
    }
    return {};
}

/// At most one exceedance Throttle per node between two boundaries (or
/// enable/disable), and every Throttle is answered by exactly one Replenish
/// or TurnOff before the next Throttle to the same node.
inline std::string check_throttle_protocol(const sim::EventTrace &trace)
{
    std::map<std::string, bool> open;       // node -> throttle awaiting release
    std::map<std::string, int> in_interval; // node -> throttles since last boundary
    for (const auto &r : trace.records()) {
        if (r.kind == TraceKind::Boundary || r.kind == TraceKind::RtEnable || r.kind == TraceKind::RtDisable) {
            in_interval.clear();
            continue;
        }
        if (r.kind != TraceKind::Cmd)
            continue;
        const std::string cmd = detail_of(r, "cmd");
        if (cmd == "Throttle") {
            if (open[r.node])
                return fmt::format("seq {}: second Throttle to {} before release", r.seq, r.node);
            if (++in_interval[r.node] > 1)
                return fmt::format("seq {}: more than one Throttle to {} in one interval", r.seq, r.node);
            open[r.node] = true;
        } else if (cmd == "Replenish" || cmd == "TurnOff") {
            if (cmd == "Replenish" && !open[r.node])
                return fmt::format("seq {}: Replenish to {} without Throttle", r.seq, r.node);
            open[r.node] = false;
        }
    }
    for (const auto &[node, o] : open)
        if (o)
            return fmt::format("Throttle to {} never released", node);
    return {};
}

/// Controller commands only while monitoring is enabled; the TurnOffs of
/// the disable activation share the RtDisable instant.
inline std::string check_commands_inside_enable(const sim::EventTrace &trace)
{
    bool enabled = false;
    std::optional<TimeUs> disabled_at;
    for (const auto &r : trace.records()) {
        if (r.kind == TraceKind::RtEnable) {
            enabled = true;
        } else if (r.kind == TraceKind::RtDisable) {
            enabled = false;
            disabled_at = r.t_us;
        } else if (r.kind == TraceKind::Cmd) {
            const std::string cmd = detail_of(r, "cmd");
            if (!enabled && !(cmd == "TurnOff" && disabled_at == r.t_us))
                return fmt::format("seq {}: {} outside the monitoring window", r.seq, cmd);
        }
    }
    return {};
}

/// Priority safety: replaying cb_start/cb_end, no ready activation (one whose
/// slice was preempted, or that starts at the same instant) may outrank the
/// running one. Checked at every cb_start: the started slice must have the
/// highest priority among activations preempted and not yet resumed.
inline std::string check_priority_safety(const sim::EventTrace &trace)
{
    struct Act {
        int prio;
        bool preempted;
    };
    std::map<int, std::map<std::string, Act>> per_core; // core -> act id -> state
    for (const auto &r : trace.records()) {
        if (r.kind != TraceKind::CbStart && r.kind != TraceKind::CbEnd)
            continue;
        auto &acts = per_core[r.core];
        const std::string id = detail_of(r, "act");
        if (r.kind == TraceKind::CbStart) {
            const int prio = std::stoi(detail_of(r, "prio"));
            for (const auto &[oid, a] : acts)
                if (oid != id && a.preempted && a.prio > prio)
                    return fmt::format("seq {}: prio {} started while act {} (prio {}) waits on core {}", r.seq, prio,
                                       oid, a.prio, r.core);
            acts[id] = {prio, false};
        } else {
            const std::string reason = detail_of(r, "reason");
            if (reason == "preempted")
                acts[id].preempted = true;
            else
                acts.erase(id);
        }
    }
    return {};
}

/// Every delivery happens at least `min_latency` after a publication of the
/// same message.
inline std::string check_transport_causality(const sim::EventTrace &trace, TimeUs min_latency)
{
    std::map<std::string, std::vector<TimeUs>> published; // topic|msg -> times
    for (const auto &r : trace.records()) {
        if (r.kind == TraceKind::Publish) {
            published[detail_of(r, "topic") + "|" + detail_of(r, "msg")].push_back(r.t_us);
        } else if (r.kind == TraceKind::Deliver) {
            const auto &ts = published[detail_of(r, "topic") + "|" + detail_of(r, "msg")];
            bool ok = false;
            for (TimeUs t : ts)
                ok = ok || r.t_us >= t + min_latency;
            if (!ok)
                return fmt::format("seq {}: delivery without a publication {} us earlier", r.seq, min_latency);
        }
    }
    return {};
}

} // namespace rosguard::testing

#endif // ROSGUARD_TESTS_TRACE_CHECKS_HPP
