#ifndef ROSGUARD_SIMKERNEL_TRACE_HPP
#define ROSGUARD_SIMKERNEL_TRACE_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rosguard/common.hpp"

namespace rosguard::sim {

enum class TraceKind {
    CbStart,     // an execution slice begins
    CbEnd,       // an execution slice ends (preempted, done, canceled)
    Publish,
    Deliver,
    State,       // nRT state transition
    IgnoredCmd,  // command that left the state unchanged
    Cmd,         // controller command
    Sample,      // counter read (self or external)
    Boundary,    // regulation interval boundary
    RtRelease,
    RtEnable,    // controller entered the monitoring window
    RtDisable,
    WorkloadDone,
    Warn,
};

std::string_view to_string(TraceKind kind);
std::optional<TraceKind> trace_kind_from_string(std::string_view s);

struct TraceRecord {
    TimeUs t_us = 0;
    std::uint64_t seq = 0;
    TraceKind kind = TraceKind::Warn;
    int core = -1;
    std::string node;
    std::string callback;
    std::string state;
    std::string detail; // key=value pairs separated by ';'

    friend bool operator==(const TraceRecord &, const TraceRecord &) = default;
};

/// Totally ordered record of a run; `seq` is the record ordinal.
class EventTrace {
public:
    static constexpr std::string_view kCsvHeader = "t_us,seq,kind,core,node,callback,state,detail";

    void add(TimeUs t, TraceKind kind, int core, std::string node, std::string callback, std::string state,
             std::string detail);

    const std::vector<TraceRecord> &records() const { return records_; }
    std::size_t size() const { return records_.size(); }
    /// Ordinal the next record will get; used as a stable id for samples and commands.
    std::uint64_t next_seq() const { return records_.size(); }
    bool empty() const { return records_.empty(); }

    void write_csv(std::ostream &os) const;
    std::string to_csv() const;
    static EventTrace read_csv(std::istream &is);

private:
    std::vector<TraceRecord> records_;
};

/// Parses "k=v;k=v" detail strings.
std::map<std::string, std::string> parse_detail(std::string_view detail);

} // namespace rosguard::sim

#endif // ROSGUARD_SIMKERNEL_TRACE_HPP
