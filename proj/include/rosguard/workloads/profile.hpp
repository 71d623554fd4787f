#ifndef ROSGUARD_WORKLOADS_PROFILE_HPP
#define ROSGUARD_WORKLOADS_PROFILE_HPP

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rosguard/common.hpp"
#include "rosguard/memmodel/memory_system.hpp"

namespace rosguard::workloads {

/// One phase: move `memory_bytes` at up to `demand_mb_s`, then compute for
/// `compute_us` without touching memory.
struct Phase {
    Bytes memory_bytes = 0;
    double demand_mb_s = 0.0;
    TimeUs compute_us = 0;

    friend bool operator==(const Phase &, const Phase &) = default;
};

struct WorkloadProfile {
    std::string name;
    std::vector<Phase> phases;

    void validate() const;
    Bytes total_bytes() const;
    double peak_demand_mb_s() const;

    friend bool operator==(const WorkloadProfile &, const WorkloadProfile &) = default;
};

/// Average figures of a benchmark on the reference platform. IPC is carried
/// for documentation; the presets only use the bandwidth.
struct BenchmarkFigures {
    std::string_view name;
    std::string_view suite;
    double avg_ipc;
    double avg_bandwidth_mb_s;
};

inline constexpr TimeUs kDefaultPresetDurationUs = 50'000;

std::span<const BenchmarkFigures> benchmark_table();
std::vector<std::string> preset_names();

/// Single-phase constant-demand profile sized so that its isolation time is
/// `duration_us`. Throws std::invalid_argument listing the valid names.
WorkloadProfile preset(std::string_view name, TimeUs duration_us = kDefaultPresetDurationUs);

/// Pure compute, zero memory demand.
WorkloadProfile compute_only(std::string name, TimeUs duration_us);

/// Time to move `bytes` at `demand` with no contention, rounded up to the tick.
TimeUs memory_time(Bytes bytes, memmodel::RateBps demand);

/// Completion time with effective rate == demand in every phase.
TimeUs isolation_time(const WorkloadProfile &profile);

/// Mutable progress of one execution of a profile. Owned by whoever runs it.
class WorkloadProgress {
public:
    WorkloadProgress() = default;
    explicit WorkloadProgress(const WorkloadProfile &profile);

    bool done() const { return phase_ >= phases_.size(); }
    bool in_memory_part() const { return !done() && memory_left_ > 0; }
    std::size_t phase_index() const { return phase_; }

    /// Offered demand right now: the phase demand while memory work remains,
    /// zero during compute or once done.
    memmodel::RateBps current_demand() const;
    Bytes memory_left() const { return memory_left_; }
    TimeUs compute_left() const { return compute_left_; }

    /// Credits bytes moved while running; anything past the phase's memory
    /// work is discarded. Returns the bytes actually credited.
    Bytes add_memory(Bytes moved);
    void add_compute(TimeUs dt);

private:
    void settle();

    struct Part {
        Bytes memory;
        memmodel::RateBps demand;
        TimeUs compute;
    };
    std::vector<Part> phases_;
    std::size_t phase_ = 0;
    Bytes memory_left_ = 0;
    TimeUs compute_left_ = 0;
};

} // namespace rosguard::workloads

#endif // ROSGUARD_WORKLOADS_PROFILE_HPP
