#include "rosguard/nodemodel/rt_node.hpp"

#include <fmt/format.h>

#include <algorithm>

#include "rosguard/nodemodel/messages.hpp"

namespace rosguard::node {

RtNode::RtNode(sim::Kernel &kernel, sim::Transport &transport, std::string name, CoreId core,
               workloads::WorkloadProfile profile, RtLifecycle lifecycle, int priority)
    : kernel_(kernel), transport_(transport), name_(std::move(name)), core_(core), profile_(std::move(profile)),
      lifecycle_(lifecycle), priority_(priority)
{
    lifecycle_.validate();
    profile_.validate();
}

bool RtNode::all_done() const
{
    return static_cast<int>(records_.size()) == lifecycle_.activation_count() &&
           std::all_of(records_.begin(), records_.end(), [](const auto &r) { return r.done_us.has_value(); });
}

void RtNode::start()
{
    for (int k = 0; k < lifecycle_.activation_count(); ++k)
        kernel_.schedule(lifecycle_.release_time(k), sim::EventKind::TimerFire, [this, k]() { release(k); });
}

void RtNode::signal(sim::Activation &a, RtSignal s, int k)
{
    sim::Message m{std::string(sim::kTopicRtSignal), name_, std::nullopt, RtSignalMsg{s, k},
                   fmt::format("{}:{}", to_string(s), k)};
    const TimeUs busy = transport_.publish(sim::EndpointKind::Rt, core_, std::move(m));
    if (transport_.model().publisher_busy)
        a.set_current_cost(busy);
}

void RtNode::release(int k)
{
    const TimeUs now = kernel_.now();
    if (live_) {
        // Overrun: the previous activation still holds the node.
        records_.push_back({k, now, std::nullopt});
        kernel_.trace().add(now, sim::TraceKind::Warn, core_, name_, "RT", "",
                            fmt::format("warn=rt_overrun;activation={};action=skip", k));
        return;
    }
    const std::size_t slot = records_.size();
    records_.push_back({k, now, std::nullopt});
    progress_ = workloads::WorkloadProgress(profile_);
    kernel_.trace().add(now, sim::TraceKind::RtRelease, core_, name_, "RT", "", fmt::format("activation={}", k));

    sim::ActivationSpec spec;
    spec.node = name_;
    spec.callback = "RT";
    spec.priority = priority_;
    spec.steps.push_back(sim::Step::fixed(0, [this, k](sim::Activation &a) { signal(a, RtSignal::Enable, k); }));
    spec.steps.push_back(sim::Step::run(progress_));
    spec.steps.push_back(sim::Step::fixed(0, [this, k, slot](sim::Activation &a) {
        const TimeUs t = kernel_.now();
        records_[slot].done_us = t;
        kernel_.trace().add(t, sim::TraceKind::WorkloadDone, core_, name_, "RT", "",
                            fmt::format("workload={};activation={};elapsed_us={}", profile_.name, k,
                                        t - records_[slot].release_us));
        signal(a, RtSignal::Disable, k);
    }));
    spec.on_complete = [this]() { live_.reset(); };
    live_ = kernel_.submit(core_, std::move(spec));
}

} // namespace rosguard::node
