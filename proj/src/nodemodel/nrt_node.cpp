#include "rosguard/nodemodel/nrt_node.hpp"

#include <fmt/format.h>

#include <memory>
#include <stdexcept>

#include "rosguard/metrics/pmu.hpp"

namespace rosguard::node {

std::string_view to_string(PmcTimerMode m)
{
    return m == PmcTimerMode::FixedDelay ? "fixed_delay" : "fixed_rate";
}

NrtNode::NrtNode(sim::Kernel &kernel, sim::Transport &transport, std::string name, CoreId core,
                 workloads::WorkloadProfile profile, metrics::SamplingScheme scheme, TimeUs sampling_period_us,
                 NodeTiming timing)
    : kernel_(kernel), transport_(transport), name_(std::move(name)), core_(core), profile_(std::move(profile)),
      progress_(profile_), scheme_(scheme), period_(sampling_period_us), timing_(timing)
{
    if (period_ <= 0)
        throw std::invalid_argument("sampling period must be > 0");
    if (timing_.cfb_cost_us < 0 || timing_.pmc_cost_us < 0)
        throw std::invalid_argument("callback costs must be >= 0");
    transport_.subscribe(sim::kTopicControl, name_, sim::EndpointKind::Nrt, core_, [this](const sim::Message &m) {
        if (const auto *c = std::any_cast<ControlMsg>(&m.payload))
            on_control(*c);
    });
}

void NrtNode::start(TimeUs t)
{
    release_ = t;
    kernel_.schedule(t, sim::EventKind::TimerFire, [this]() {
        sim::ActivationSpec spec;
        spec.node = name_;
        spec.callback = std::string(to_string(CallbackName::NCT));
        spec.priority = callback_priority(CallbackName::NCT);
        spec.steps.push_back(sim::Step::run(progress_));
        spec.on_complete = [this]() {
            completion_ = kernel_.now();
            kernel_.trace().add(kernel_.now(), sim::TraceKind::WorkloadDone, core_, name_, "NCT", "",
                                fmt::format("workload={};elapsed_us={}", profile_.name, *completion_ - *release_));
        };
        kernel_.submit(core_, std::move(spec));
    });
}

TimeUs NrtNode::throttled_us(TimeUs now) const
{
    return throttled_total_ + (state_ == NodeState::Thr ? now - thr_since_ : 0);
}

void NrtNode::on_control(const ControlMsg &msg)
{
    sim::ActivationSpec spec;
    spec.node = name_;
    spec.callback = std::string(to_string(CallbackName::CFB));
    spec.priority = callback_priority(CallbackName::CFB);
    spec.steps.push_back(sim::Step::fixed(timing_.cfb_cost_us));
    spec.on_complete = [this, msg]() { apply(msg); };
    kernel_.submit(core_, std::move(spec));
}

void NrtNode::apply(const ControlMsg &msg)
{
    const TimeUs now = kernel_.now();
    const DispatchResult r = cfb_dispatch(msg.command, state_, scheme_);
    if (!r.changed) {
        kernel_.trace().add(now, sim::TraceKind::IgnoredCmd, core_, name_, "CFB", std::string(to_string(state_)),
                            fmt::format("cmd={};cid={}", to_string(msg.command), msg.command_id));
        return;
    }
    const NodeState from = state_;
    state_ = r.state;
    kernel_.trace().add(now, sim::TraceKind::State, core_, name_, "CFB", std::string(to_string(state_)),
                        fmt::format("from={};to={};cmd={};cid={}", to_string(from), to_string(state_),
                                    to_string(msg.command), msg.command_id));

    for (NodeAction action : r.actions) {
        switch (action) {
        case NodeAction::CancelThrottle:
            if (thr_)
                kernel_.cancel_activation(*thr_);
            thr_.reset();
            throttled_total_ += now - thr_since_;
            break;
        case NodeAction::DeregisterPmcTimer:
            drop_pmc(r.state == NodeState::Thr);
            break;
        case NodeAction::StartThrottle: {
            ++throttles_;
            thr_since_ = now;
            sim::ActivationSpec spec;
            spec.node = name_;
            spec.callback = std::string(to_string(CallbackName::THR));
            spec.priority = callback_priority(CallbackName::THR);
            spec.steps.push_back(sim::Step::fixed(kForever));
            thr_ = kernel_.submit(core_, std::move(spec));
            break;
        }
        case NodeAction::RegisterPmcTimer:
            // The window restarts only when monitoring is switched on; after a
            // throttle episode the pending bytes go to the next sample.
            if (from == NodeState::Off) {
                window_start_ = now;
                grid_anchor_ = now;
            }
            if (timing_.timer_mode == PmcTimerMode::FixedRate || !pmc_)
                arm_pmc_timer(now);
            break;
        }
    }
    if (state_ == NodeState::Off)
        drop_pmc(false);
}

void NrtNode::arm_pmc_timer(TimeUs from)
{
    if (pmc_timer_)
        kernel_.cancel(*pmc_timer_);
    TimeUs t = from + period_;
    if (timing_.timer_mode == PmcTimerMode::FixedRate)
        t = grid_anchor_ + ((from - grid_anchor_) / period_ + 1) * period_;
    pmc_timer_ = kernel_.schedule(t, sim::EventKind::TimerFire, [this]() { fire_pmc(); });
}

void NrtNode::drop_pmc(bool keep_read)
{
    if (pmc_timer_)
        kernel_.cancel(*pmc_timer_);
    pmc_timer_.reset();
    // A PMC activation that already read the counters keeps its sample and
    // publishes once the core is handed back.
    if (pmc_ && !(keep_read && pmc_read_done_)) {
        kernel_.cancel_activation(*pmc_);
        pmc_.reset();
        pmc_read_done_ = false;
    }
}

void NrtNode::fire_pmc()
{
    pmc_timer_.reset();
    if (state_ != NodeState::On)
        return;
    if (timing_.timer_mode == PmcTimerMode::FixedRate)
        arm_pmc_timer(kernel_.now());
    if (pmc_) {
        kernel_.trace().add(kernel_.now(), sim::TraceKind::Warn, core_, name_, "PMC", "",
                            "warn=pmc_overrun;action=skip");
        return;
    }

    auto pending = std::make_shared<std::optional<SampleMsg>>();
    sim::ActivationSpec spec;
    spec.node = name_;
    spec.callback = std::string(to_string(CallbackName::PMC));
    spec.priority = callback_priority(CallbackName::PMC);
    spec.steps.push_back(sim::Step::fixed(timing_.pmc_cost_us, [this, pending](sim::Activation &) {
        const TimeUs now = kernel_.now();
        pmc_read_done_ = true;
        if (now <= window_start_)
            return;
        const metrics::PmuDelta d = kernel_.memory().read_counters(core_, window_start_, now);
        const std::uint64_t sid = kernel_.trace().next_seq();
        kernel_.trace().add(now, sim::TraceKind::Sample, core_, name_, "PMC", "",
                            fmt::format("sid={};t0={};t1={};accesses={}", sid, window_start_, now,
                                        metrics::l3_accesses(d)));
        window_start_ = now;
        *pending = SampleMsg{d, sid, name_};
    }));
    spec.steps.push_back(sim::Step::fixed(0, [this, pending](sim::Activation &a) {
        if (!*pending)
            return;
        sim::Message m{std::string(sim::kTopicSamples), name_, std::nullopt, **pending,
                       fmt::format("sample:{}", (*pending)->sample_id)};
        const TimeUs busy = transport_.publish(sim::EndpointKind::Nrt, core_, std::move(m));
        ++samples_;
        if (transport_.model().publisher_busy)
            a.set_current_cost(busy);
    }));
    spec.on_complete = [this]() {
        pmc_.reset();
        pmc_read_done_ = false;
        if (state_ == NodeState::On && timing_.timer_mode == PmcTimerMode::FixedDelay)
            arm_pmc_timer(kernel_.now());
    };
    pmc_ = kernel_.submit(core_, std::move(spec));
}

} // namespace rosguard::node
