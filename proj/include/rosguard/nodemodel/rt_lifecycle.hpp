#ifndef ROSGUARD_NODEMODEL_RT_LIFECYCLE_HPP
#define ROSGUARD_NODEMODEL_RT_LIFECYCLE_HPP

#include <string_view>
#include <variant>
#include <vector>

#include "rosguard/common.hpp"

namespace rosguard::node {

struct OneShot {};

struct Periodic {
    TimeUs period_us = 0;
    int activations = 1;
};

/// Release pattern of the critical node. `rt_window_us` is the nominal length
/// of one activation.
struct RtLifecycle {
    std::variant<OneShot, Periodic> pattern = OneShot{};
    TimeUs rt_window_us = 0;
    TimeUs start_us = 0;

    int activation_count() const;
    TimeUs release_time(int k) const;
    /// Throws std::invalid_argument on overlapping activations or bad values.
    void validate() const;
};

enum class RtSignal { Enable, Disable };
std::string_view to_string(RtSignal s);

struct SignalEvent {
    TimeUs t_us = 0;
    RtSignal signal = RtSignal::Enable;
    int activation = 0;

    friend bool operator==(const SignalEvent &, const SignalEvent &) = default;
};

/// Nominal Enable/Disable schedule of activations released before `horizon_us`.
std::vector<SignalEvent> rt_emit_signals(const RtLifecycle &lifecycle, TimeUs horizon_us);

} // namespace rosguard::node

#endif // ROSGUARD_NODEMODEL_RT_LIFECYCLE_HPP
