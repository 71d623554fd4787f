#include "rosguard/metrics/pmu.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace rosguard::metrics {

void PlatformParams::validate() const
{
    if (freq_hz <= 0)
        throw std::invalid_argument("freq_hz must be > 0");
    if (cache_line_bytes <= 0 || !std::has_single_bit(static_cast<std::uint64_t>(cache_line_bytes)))
        throw std::invalid_argument("cache_line_bytes must be a power of two");
    if (!(capacity_mb_s > 0.0))
        throw std::invalid_argument("capacity_mb_s must be > 0");
}

void PmuDelta::validate(const PlatformParams &platform) const
{
    if (window_end <= window_start)
        throw std::invalid_argument("PmuDelta window_end must be > window_start");
    if (cycles < 0 || l2_refills < 0 || l2_writebacks < 0)
        throw std::invalid_argument("PmuDelta counts must be >= 0");
    if (cycles > cycles_in(window_end - window_start, platform))
        throw std::invalid_argument("PmuDelta cycles exceed freq_hz * window");
}

double ExactRatio::to_double() const
{
    // Quotient and remainder keep the result within one ulp even when the
    // operands are far beyond 2^53.
    const Int128 q = num / den;
    const Int128 r = num % den;
    return static_cast<double>(q) + static_cast<double>(r) / static_cast<double>(den);
}

std::int64_t l3_accesses(const PmuDelta &delta)
{
    return delta.l2_refills + delta.l2_writebacks;
}

Bytes window_bytes(const PmuDelta &delta, const PlatformParams &platform)
{
    return l3_accesses(delta) * platform.cache_line_bytes;
}

ExactRatio bandwidth_exact(const PmuDelta &delta, const PlatformParams &platform)
{
    if (delta.cycles == 0)
        throw std::domain_error("empty window");
    ExactRatio r;
    r.num = static_cast<Int128>(platform.cache_line_bytes) * platform.freq_hz * l3_accesses(delta);
    r.den = static_cast<Int128>(delta.cycles) * kBytesPerMb;
    return r;
}

BandwidthMBs bandwidth_mb_s(const PmuDelta &delta, const PlatformParams &platform)
{
    return BandwidthMBs{bandwidth_exact(delta, platform).to_double()};
}

std::int64_t cycles_in(TimeUs window_us, const PlatformParams &platform)
{
    return static_cast<std::int64_t>(static_cast<Int128>(platform.freq_hz) * window_us / kUsPerSecond);
}

double slowdown_ratio(TimeUs measured_us, TimeUs isolation_us)
{
    if (isolation_us == 0)
        throw std::domain_error("isolation time must be > 0");
    return static_cast<double>(measured_us) / static_cast<double>(isolation_us);
}

} // namespace rosguard::metrics
