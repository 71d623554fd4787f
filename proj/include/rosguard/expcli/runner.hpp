#ifndef ROSGUARD_EXPCLI_RUNNER_HPP
#define ROSGUARD_EXPCLI_RUNNER_HPP

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "rosguard/controller/controller_node.hpp"
#include "rosguard/expcli/scenario.hpp"
#include "rosguard/simkernel/activation_delay.hpp"
#include "rosguard/simkernel/trace.hpp"

namespace rosguard::exp {

struct ResultRow {
    std::string scenario_id;
    std::string policy;
    std::string scheme;
    TimeUs sampling_us = 0;
    TimeUs regulation_us = 0;
    double threshold_ratio = 0.0;
    std::string rt_workload;
    std::string nrt_workload;
    double rt_slowdown = 0.0;
    double nrt_slowdown = 0.0; // worst regulated node
    std::vector<double> nrt_slowdowns;
    std::uint64_t throttle_count = 0;
    TimeUs throttled_us = 0;
    std::optional<sim::DelaySummary> delay;
    std::uint64_t samples = 0;
    bool complete = true;
};

struct RunResult {
    ResultRow row;
    sim::EventTrace trace;
    std::vector<ctrl::IntervalAudit> audits;
    std::vector<sim::DelayEpisode> delays;
    TimeUs rt_response_us = 0;  // worst activation
    TimeUs rt_isolation_us = 0;
    std::vector<TimeUs> nrt_response_us;
    std::vector<TimeUs> nrt_isolation_us;
    TimeUs end_time_us = 0;
};

/// Isolation baselines (sole occupancy, no controller), computed once per
/// (profile, platform) key. Thread-safe.
class BaselineCache {
public:
    TimeUs get(const workloads::WorkloadProfile &profile, const metrics::PlatformParams &platform);

private:
    std::mutex mu_;
    std::map<std::string, TimeUs> cache_;
};

/// Runs the workload alone on one core through the kernel.
TimeUs isolation_baseline(const workloads::WorkloadProfile &profile, const metrics::PlatformParams &platform);

/// Runs the scenario until every workload finished and the queue drained, or
/// until the duration cap (row flagged incomplete).
RunResult run_scenario(const Scenario &s, BaselineCache *cache = nullptr);

/// Runs independent scenarios on up to `jobs` threads; results keep the input
/// order. Traces are dropped unless `keep_traces`.
std::vector<RunResult> run_sweep(const std::vector<Scenario> &scenarios, unsigned jobs, bool keep_traces);

} // namespace rosguard::exp

#endif // ROSGUARD_EXPCLI_RUNNER_HPP
