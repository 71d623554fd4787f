#include "rosguard/nodemodel/rt_lifecycle.hpp"

#include <cassert>
#include <stdexcept>

namespace rosguard::node {

std::string_view to_string(RtSignal s)
{
    return s == RtSignal::Enable ? "Enable" : "Disable";
}

int RtLifecycle::activation_count() const
{
    if (const auto *p = std::get_if<Periodic>(&pattern))
        return p->activations;
    return 1;
}

TimeUs RtLifecycle::release_time(int k) const
{
    if (const auto *p = std::get_if<Periodic>(&pattern))
        return start_us + static_cast<TimeUs>(k) * p->period_us;
    return start_us;
}

void RtLifecycle::validate() const
{
    if (rt_window_us <= 0)
        throw std::invalid_argument("rt window must be > 0");
    if (start_us < 0)
        throw std::invalid_argument("rt start must be >= 0");
    if (const auto *p = std::get_if<Periodic>(&pattern)) {
        if (p->period_us <= 0)
            throw std::invalid_argument("rt period must be > 0");
        if (p->activations < 1)
            throw std::invalid_argument("rt activations must be >= 1");
        if (p->period_us < rt_window_us)
            throw std::invalid_argument("overlapping rt activations: period shorter than the rt window");
    }
}

std::vector<SignalEvent> rt_emit_signals(const RtLifecycle &lifecycle, TimeUs horizon_us)
{
    lifecycle.validate();
    std::vector<SignalEvent> out;
    for (int k = 0; k < lifecycle.activation_count(); ++k) {
        const TimeUs t = lifecycle.release_time(k);
        if (t >= horizon_us)
            break;
        out.push_back({t, RtSignal::Enable, k});
        out.push_back({t + lifecycle.rt_window_us, RtSignal::Disable, k});
    }
    for (std::size_t i = 1; i < out.size(); i += 2)
        assert(out[i - 1].signal == RtSignal::Enable && out[i].t_us >= out[i - 1].t_us);
    return out;
}

} // namespace rosguard::node
