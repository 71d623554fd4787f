#include "rosguard/memmodel/memory_system.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace rosguard::memmodel {

RateBps mb_s_to_bps(double mb_s)
{
    return static_cast<RateBps>(std::llround(mb_s * static_cast<double>(kBytesPerMb)));
}

double bps_to_mb_s(RateBps bps)
{
    return static_cast<double>(bps) / static_cast<double>(kBytesPerMb);
}

std::vector<double> effective_rates(std::span<const double> demands_mb_s, double capacity_mb_s)
{
    if (!(capacity_mb_s > 0.0))
        throw std::invalid_argument("capacity must be > 0");
    double sum = 0.0;
    for (double d : demands_mb_s) {
        if (d < 0.0)
            throw std::invalid_argument("demands must be >= 0");
        sum += d;
    }
    std::vector<double> out(demands_mb_s.begin(), demands_mb_s.end());
    if (sum <= capacity_mb_s)
        return out;
    const double scale = capacity_mb_s / sum;
    for (double &r : out)
        r *= scale;
    return out;
}

MemorySystem::MemorySystem(metrics::PlatformParams platform, int num_cores)
    : platform_(platform), capacity_(mb_s_to_bps(platform.capacity_mb_s)), cores_(static_cast<std::size_t>(num_cores))
{
    platform_.validate();
    if (num_cores <= 0)
        throw std::invalid_argument("memory system needs at least one core");
}

void MemorySystem::check_core(CoreId core) const
{
    if (core < 0 || core >= num_cores())
        throw std::out_of_range("unknown core " + std::to_string(core));
}

void MemorySystem::set_demand(CoreId core, RateBps demand)
{
    check_core(core);
    if (demand < 0)
        throw std::invalid_argument("demand must be >= 0");
    cores_[core].demand = demand;
}

RateBps MemorySystem::demand(CoreId core) const
{
    check_core(core);
    return cores_[core].demand;
}

void MemorySystem::set_writeback_fraction(double f)
{
    if (!(f >= 0.0 && f <= 1.0))
        throw std::invalid_argument("writeback_fraction must be in [0,1]");
    writeback_fraction_ = f;
}

static Int128 total_demand(const std::vector<RateBps> &d)
{
    Int128 s = 0;
    for (RateBps x : d)
        s += x;
    return s;
}

bool MemorySystem::saturated() const
{
    Int128 s = 0;
    for (const auto &c : cores_)
        s += c.demand;
    return s > capacity_;
}

double MemorySystem::effective_rate_mb_s(CoreId core) const
{
    return effective_rates_mb_s()[core];
}

std::vector<double> MemorySystem::effective_rates_mb_s() const
{
    std::vector<double> d;
    d.reserve(cores_.size());
    for (const auto &c : cores_)
        d.push_back(bps_to_mb_s(c.demand));
    if (!saturated())
        return d;
    return effective_rates(d, bps_to_mb_s(capacity_));
}

void MemorySystem::record(CoreState &c)
{
    auto &h = c.history;
    if (h.size() >= 2 && h.back().second == c.bytes && h[h.size() - 2].second == c.bytes) {
        h.back().first = now_;
        return;
    }
    h.emplace_back(now_, c.bytes);
}

std::vector<Bytes> MemorySystem::advance(TimeUs dt)
{
    if (dt < 0)
        throw std::invalid_argument("cannot advance by a negative duration");
    std::vector<Bytes> moved(cores_.size(), 0);
    if (dt == 0)
        return moved;

    std::vector<RateBps> demands;
    demands.reserve(cores_.size());
    for (const auto &c : cores_)
        demands.push_back(c.demand);
    const Int128 sum = total_demand(demands);

    if (sum <= capacity_) {
        for (std::size_t i = 0; i < cores_.size(); ++i) {
            auto &c = cores_[i];
            const Int128 num = static_cast<Int128>(c.demand) * dt + c.carry;
            moved[i] = static_cast<Bytes>(num / kUsPerSecond);
            c.carry = static_cast<std::int64_t>(num % kUsPerSecond);
        }
    } else {
        const Int128 num = static_cast<Int128>(capacity_) * dt + saturated_carry_;
        const Int128 total = num / kUsPerSecond;
        saturated_carry_ = static_cast<std::int64_t>(num % kUsPerSecond);

        std::vector<Int128> rem(cores_.size(), 0);
        Int128 assigned = 0;
        for (std::size_t i = 0; i < cores_.size(); ++i) {
            const Int128 share = total * demands[i];
            moved[i] = static_cast<Bytes>(share / sum);
            rem[i] = share % sum;
            assigned += moved[i];
        }
        std::vector<std::size_t> order(cores_.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rem[a] > rem[b]; });
        for (Int128 left = total - assigned; left > 0; --left)
            ++moved[order[static_cast<std::size_t>(total - assigned - left)]];
    }

    now_ += dt;
    for (std::size_t i = 0; i < cores_.size(); ++i) {
        cores_[i].bytes += moved[i];
        record(cores_[i]);
    }
    return moved;
}

Bytes MemorySystem::bytes(CoreId core) const
{
    check_core(core);
    return cores_[core].bytes;
}

Bytes MemorySystem::bytes_at(CoreId core, TimeUs t) const
{
    check_core(core);
    if (t > now_)
        throw std::invalid_argument("counter window in the future");
    if (t < 0)
        throw std::invalid_argument("counter window before time zero");
    const auto &h = cores_[core].history;
    auto it = std::lower_bound(h.begin(), h.end(), t, [](const auto &p, TimeUs v) { return p.first < v; });
    if (it == h.end())
        return h.back().second; // t == now_ with no movement recorded yet
    if (it->first == t)
        return it->second;
    const auto &hi = *it;
    const auto &lo = *std::prev(it);
    const Int128 span = hi.first - lo.first;
    const Int128 part = static_cast<Int128>(hi.second - lo.second) * (t - lo.first) / span;
    return lo.second + static_cast<Bytes>(part);
}

TimeUs MemorySystem::time_to_move(CoreId core, Bytes amount) const
{
    check_core(core);
    if (amount <= 0)
        return 0;
    const auto &c = cores_[core];
    if (c.demand == 0)
        return kForever;
    Int128 sum = 0;
    for (const auto &x : cores_)
        sum += x.demand;
    Int128 dt;
    if (sum <= capacity_) {
        const Int128 need = static_cast<Int128>(amount) * kUsPerSecond - c.carry;
        dt = (need + c.demand - 1) / c.demand;
    } else {
        const Int128 num = static_cast<Int128>(amount) * kUsPerSecond * sum;
        const Int128 den = static_cast<Int128>(c.demand) * capacity_;
        dt = (num + den - 1) / den;
    }
    return static_cast<TimeUs>(std::max<Int128>(dt, 1));
}

metrics::PmuDelta MemorySystem::read_counters(CoreId core, TimeUs t0, TimeUs t1) const
{
    check_core(core);
    if (t1 > now_)
        throw std::invalid_argument("counter window in the future");
    if (t0 >= t1)
        throw std::invalid_argument("counter window must satisfy t0 < t1");
    const Bytes line = platform_.cache_line_bytes;
    const std::int64_t accesses = bytes_at(core, t1) / line - bytes_at(core, t0) / line;
    metrics::PmuDelta d;
    d.core_id = core;
    d.window_start = t0;
    d.window_end = t1;
    d.cycles = metrics::cycles_in(t1 - t0, platform_);
    d.l2_writebacks = static_cast<std::int64_t>(std::floor(static_cast<double>(accesses) * writeback_fraction_));
    d.l2_refills = accesses - d.l2_writebacks;
    return d;
}

} // namespace rosguard::memmodel
