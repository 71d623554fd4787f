#include "rosguard/workloads/profile.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace rosguard::workloads {

namespace {

// Average IPC and bandwidth of the Isolbench and SD-VBS programs on the
// reference Cortex-A78AE cluster.
constexpr std::array<BenchmarkFigures, 7> kBenchmarks{{
    {"bandwidth_read", "Isolbench", 1.07, 26271.74},
    {"bandwidth_write", "Isolbench", 1.61, 25519.15},
    {"disparity", "SD-VBS", 0.83, 1517.16},
    {"mser", "SD-VBS", 2.16, 3722.43},
    {"sift", "SD-VBS", 0.58, 232.15},
    {"stitch", "SD-VBS", 0.69, 713.08},
    {"tracking", "SD-VBS", 3.89, 393.43},
}};

} // namespace

void WorkloadProfile::validate() const
{
    if (phases.empty())
        throw std::invalid_argument("workload '" + name + "' needs at least one phase");
    for (const auto &p : phases) {
        if (p.memory_bytes < 0 || p.compute_us < 0 || p.demand_mb_s < 0.0 || !std::isfinite(p.demand_mb_s))
            throw std::invalid_argument("workload '" + name + "' phase quantities must be >= 0");
        if (p.memory_bytes > 0 && memmodel::mb_s_to_bps(p.demand_mb_s) <= 0)
            throw std::invalid_argument("workload '" + name + "' memory phase needs demand_mb_s > 0");
    }
}

Bytes WorkloadProfile::total_bytes() const
{
    Bytes s = 0;
    for (const auto &p : phases)
        s += p.memory_bytes;
    return s;
}

double WorkloadProfile::peak_demand_mb_s() const
{
    double m = 0.0;
    for (const auto &p : phases)
        if (p.memory_bytes > 0)
            m = std::max(m, p.demand_mb_s);
    return m;
}

std::span<const BenchmarkFigures> benchmark_table()
{
    return kBenchmarks;
}

std::vector<std::string> preset_names()
{
    std::vector<std::string> out;
    for (const auto &b : kBenchmarks)
        out.emplace_back(b.name);
    return out;
}

WorkloadProfile preset(std::string_view name, TimeUs duration_us)
{
    if (duration_us <= 0)
        throw std::invalid_argument("preset duration must be > 0");
    for (const auto &b : kBenchmarks) {
        if (b.name != name)
            continue;
        const memmodel::RateBps bps = memmodel::mb_s_to_bps(b.avg_bandwidth_mb_s);
        const auto bytes = static_cast<Bytes>(static_cast<Int128>(bps) * duration_us / kUsPerSecond);
        return WorkloadProfile{std::string(name), {Phase{bytes, b.avg_bandwidth_mb_s, 0}}};
    }
    std::string valid;
    for (const auto &b : kBenchmarks) {
        if (!valid.empty())
            valid += ", ";
        valid += b.name;
    }
    throw std::invalid_argument("unknown workload preset '" + std::string(name) + "' (valid: " + valid + ")");
}

WorkloadProfile compute_only(std::string name, TimeUs duration_us)
{
    return WorkloadProfile{std::move(name), {Phase{0, 0.0, duration_us}}};
}

TimeUs memory_time(Bytes bytes, memmodel::RateBps demand)
{
    if (bytes <= 0)
        return 0;
    if (demand <= 0)
        throw std::invalid_argument("memory work with zero demand never completes");
    const Int128 num = static_cast<Int128>(bytes) * kUsPerSecond;
    return static_cast<TimeUs>((num + demand - 1) / demand);
}

TimeUs isolation_time(const WorkloadProfile &profile)
{
    profile.validate();
    TimeUs t = 0;
    for (const auto &p : profile.phases)
        t += memory_time(p.memory_bytes, memmodel::mb_s_to_bps(p.demand_mb_s)) + p.compute_us;
    return t;
}

WorkloadProgress::WorkloadProgress(const WorkloadProfile &profile)
{
    profile.validate();
    for (const auto &p : profile.phases)
        phases_.push_back({p.memory_bytes, memmodel::mb_s_to_bps(p.demand_mb_s), p.compute_us});
    phase_ = 0;
    memory_left_ = phases_[0].memory;
    compute_left_ = phases_[0].compute;
    settle();
}

memmodel::RateBps WorkloadProgress::current_demand() const
{
    return in_memory_part() ? phases_[phase_].demand : 0;
}

void WorkloadProgress::settle()
{
    while (!done() && memory_left_ == 0 && compute_left_ == 0) {
        ++phase_;
        if (!done()) {
            memory_left_ = phases_[phase_].memory;
            compute_left_ = phases_[phase_].compute;
        }
    }
}

Bytes WorkloadProgress::add_memory(Bytes moved)
{
    if (!in_memory_part() || moved <= 0)
        return 0;
    const Bytes used = std::min(moved, memory_left_);
    memory_left_ -= used;
    settle();
    return used;
}

void WorkloadProgress::add_compute(TimeUs dt)
{
    if (done() || in_memory_part() || dt <= 0)
        return;
    compute_left_ = std::max<TimeUs>(0, compute_left_ - dt);
    settle();
}

} // namespace rosguard::workloads
