#ifndef ROSGUARD_METRICS_PMU_HPP
#define ROSGUARD_METRICS_PMU_HPP

#include <cstdint>

#include "rosguard/common.hpp"

namespace rosguard::metrics {

struct PlatformParams {
    std::int64_t freq_hz = 2'201'000'000;
    std::int64_t cache_line_bytes = 64;
    // Shared-bandwidth capacity of the memory model. Calibration knob, not a
    // measured constant: just above the bandwidth_read average so that one
    // aggressor nearly saturates and two contend.
    double capacity_mb_s = 30000.0;

    /// Throws std::invalid_argument naming the violated constraint.
    void validate() const;
};

/// Counter increments observed on one core over [window_start, window_end).
struct PmuDelta {
    std::int64_t cycles = 0;
    std::int64_t l2_refills = 0;
    std::int64_t l2_writebacks = 0;
    TimeUs window_start = 0;
    TimeUs window_end = 0;
    CoreId core_id = 0;

    void validate(const PlatformParams &platform) const;
};

struct BandwidthMBs {
    double value = 0.0;
};

/// Exact rational value num/den; only converted to double at the edge.
struct ExactRatio {
    Int128 num = 0;
    Int128 den = 1;

    double to_double() const;
};

/// L3 accesses are the L2 misses: refills plus write-backs.
std::int64_t l3_accesses(const PmuDelta &delta);

/// Bytes behind the accesses of a window: accesses * cache_line_bytes. Equal to
/// bandwidth * window length, without the rounding.
Bytes window_bytes(const PmuDelta &delta, const PlatformParams &platform);

/// line_bytes * freq * accesses / (cycles * 2^20), exactly. Throws
/// std::domain_error("empty window") when cycles == 0.
ExactRatio bandwidth_exact(const PmuDelta &delta, const PlatformParams &platform);

BandwidthMBs bandwidth_mb_s(const PmuDelta &delta, const PlatformParams &platform);

/// Cycles elapsed on a core clocked at freq_hz over `window_us`.
std::int64_t cycles_in(TimeUs window_us, const PlatformParams &platform);

/// measured / isolation. Throws std::domain_error when isolation_us == 0.
double slowdown_ratio(TimeUs measured_us, TimeUs isolation_us);

} // namespace rosguard::metrics

#endif // ROSGUARD_METRICS_PMU_HPP
