#ifndef ROSGUARD_SIMKERNEL_KERNEL_HPP
#define ROSGUARD_SIMKERNEL_KERNEL_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "rosguard/common.hpp"
#include "rosguard/memmodel/memory_system.hpp"
#include "rosguard/simkernel/scheduler.hpp"
#include "rosguard/simkernel/trace.hpp"

namespace rosguard::sim {

enum class EventKind { MsgDelivery, TimerFire, CallbackStart, CallbackEnd, WorkloadPhase, IntervalBoundary };

/// Queue position of a scheduled event. Events run in (t_us, tier, seq)
/// order; interval boundaries sit in tier 1 so that every other event of the
/// same instant (samples, polls, signals) is handled before the interval is
/// closed.
struct EventHandle {
    TimeUs t_us = 0;
    int tier = 0;
    std::uint64_t seq = 0;

    auto operator<=>(const EventHandle &) const = default;
};

class Kernel {
public:
    Kernel(metrics::PlatformParams platform, int num_cores);

    Kernel(const Kernel &) = delete;
    Kernel &operator=(const Kernel &) = delete;

    TimeUs now() const { return now_; }
    int num_cores() const { return static_cast<int>(cores_.size()); }

    /// Throws std::logic_error when t < now(): that is a kernel bug.
    EventHandle schedule(TimeUs t, EventKind kind, std::function<void()> fn);
    bool cancel(const EventHandle &h);
    bool pending(const EventHandle &h) const { return queue_.count(h) != 0; }
    std::size_t pending_events() const { return queue_.size(); }
    std::uint64_t events_processed() const { return processed_; }

    /// Processes events in order until the queue drains, stop() is called,
    /// or the next event lies beyond t_end. With a finite t_end and no stop,
    /// the clock ends at t_end.
    void run_until(TimeUs t_end);
    void stop() { stop_ = true; }

    ActivationId submit(CoreId core, ActivationSpec spec);
    /// Removes a ready or running activation. Must not target the activation
    /// whose hook is currently executing.
    bool cancel_activation(ActivationId id);
    bool live(ActivationId id) const { return activations_.count(id) != 0; }

    const CoreScheduler &core(CoreId id) const { return cores_.at(static_cast<std::size_t>(id)); }
    memmodel::MemorySystem &memory() { return memory_; }
    const memmodel::MemorySystem &memory() const { return memory_; }
    EventTrace &trace() { return trace_; }
    const EventTrace &trace() const { return trace_; }

private:
    struct Pending {
        EventKind kind;
        std::function<void()> fn;
    };

    void advance_to(TimeUs t);
    void settle();
    bool settle_core(CoreScheduler &core);
    void start_slice(CoreScheduler &core, Activation &a);
    void end_slice(CoreScheduler &core, Activation &a, const char *reason);
    void refresh_rates_and_wakes();

    TimeUs now_ = 0;
    std::uint64_t next_seq_ = 0;
    std::uint64_t next_activation_ = 1;
    std::uint64_t next_ready_order_ = 0;
    std::uint64_t processed_ = 0;
    bool stop_ = false;

    std::map<EventHandle, Pending> queue_;
    std::vector<CoreScheduler> cores_;
    std::vector<std::optional<EventHandle>> wakes_;
    std::unordered_map<ActivationId, std::unique_ptr<Activation>> activations_;
    memmodel::MemorySystem memory_;
    EventTrace trace_;
};

} // namespace rosguard::sim

#endif // ROSGUARD_SIMKERNEL_KERNEL_HPP
