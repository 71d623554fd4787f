#ifndef ROSGUARD_MEMMODEL_MEMORY_SYSTEM_HPP
#define ROSGUARD_MEMMODEL_MEMORY_SYSTEM_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "rosguard/common.hpp"
#include "rosguard/metrics/pmu.hpp"

namespace rosguard::memmodel {

/// Bytes per second, integral so that byte accounting stays exact.
using RateBps = std::int64_t;

RateBps mb_s_to_bps(double mb_s);
double bps_to_mb_s(RateBps bps);

/// Proportional fair share: demands pass through untouched while their sum
/// fits the capacity, otherwise every demand is scaled by capacity / sum.
std::vector<double> effective_rates(std::span<const double> demands_mb_s, double capacity_mb_s);

/// Shared-bandwidth model for a set of cores.
///
/// Cumulative per-core byte counters are advanced in integer bytes. Below
/// saturation each core carries its own sub-byte remainder; when saturated the
/// exact capacity volume (with a global carry) is split across cores by largest
/// remainder, so the sum over any saturated span equals capacity * duration.
class MemorySystem {
public:
    MemorySystem(metrics::PlatformParams platform, int num_cores);

    int num_cores() const { return static_cast<int>(cores_.size()); }
    TimeUs now() const { return now_; }
    const metrics::PlatformParams &platform() const { return platform_; }

    void set_demand(CoreId core, RateBps demand);
    RateBps demand(CoreId core) const;
    RateBps capacity() const { return capacity_; }
    bool saturated() const;

    /// Effective rate of `core` at the current demands, in MB/s.
    double effective_rate_mb_s(CoreId core) const;
    std::vector<double> effective_rates_mb_s() const;

    /// Moves time forward by dt with the current demands held constant.
    /// Returns the bytes moved by each core.
    std::vector<Bytes> advance(TimeUs dt);

    Bytes bytes(CoreId core) const;

    /// Cumulative bytes of `core` at an instant t <= now(). Interpolated
    /// (floor) inside a constant-rate segment, so it is monotone in t.
    Bytes bytes_at(CoreId core, TimeUs t) const;

    /// Smallest dt after which `core` will have moved at least `amount`
    /// bytes at the current demands; kForever when its rate is zero. Under
    /// saturation the largest-remainder split can lag by a byte, so callers
    /// re-check and retry.
    TimeUs time_to_move(CoreId core, Bytes amount) const;

    /// Synthetic PMU read over [t0, t1]. Accesses are whole cache lines of the
    /// cumulative counter (remainders carried), split into refills and
    /// write-backs by `writeback_fraction`.
    metrics::PmuDelta read_counters(CoreId core, TimeUs t0, TimeUs t1) const;

    void set_writeback_fraction(double f);

private:
    struct CoreState {
        RateBps demand = 0;
        Bytes bytes = 0;
        std::int64_t carry = 0; // in bytes * 1e6 units, < 1e6
        std::vector<std::pair<TimeUs, Bytes>> history{{0, 0}};
    };

    void check_core(CoreId core) const;
    void record(CoreState &c);

    metrics::PlatformParams platform_;
    RateBps capacity_;
    std::vector<CoreState> cores_;
    std::int64_t saturated_carry_ = 0;
    TimeUs now_ = 0;
    double writeback_fraction_ = 0.0;
};

} // namespace rosguard::memmodel

#endif // ROSGUARD_MEMMODEL_MEMORY_SYSTEM_HPP
