#ifndef ROSGUARD_EXPCLI_OUTPUTS_HPP
#define ROSGUARD_EXPCLI_OUTPUTS_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "rosguard/expcli/runner.hpp"

namespace rosguard::exp {

inline constexpr const char *kSummaryHeader =
    "scenario_id,policy,scheme,sampling_us,regulation_us,threshold_ratio,rt_workload,nrt_workload,rt_slowdown,"
    "nrt_slowdown,throttle_count,throttled_us,delay_min_us,delay_med_us,delay_max_us,samples";

/// One CSV line, no newline. Slowdowns carry 6 decimals; missing delays are empty.
std::string summary_line(const ResultRow &row);

/// Rows sorted by scenario id.
void write_summary(std::ostream &os, std::vector<ResultRow> rows);

struct OutputFlags {
    bool traces = false;
    bool plots = false;
};

/// Writes summary.csv, traces/<id>.csv and plots into `dir` (created if
/// missing). Throws std::runtime_error when the directory is not writable.
void emit_outputs(const std::filesystem::path &dir, const std::vector<RunResult> &results, OutputFlags flags);

} // namespace rosguard::exp

#endif // ROSGUARD_EXPCLI_OUTPUTS_HPP
