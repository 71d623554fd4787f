#include "rosguard/controller/controller_node.hpp"

#include <fmt/format.h>

#include <memory>
#include <stdexcept>

namespace rosguard::ctrl {

ControllerNode::ControllerNode(sim::Kernel &kernel, sim::Transport &transport, std::string name, CoreId core,
                               metrics::RegulationConfig cfg, TimeUs rt_window_estimate_us,
                               std::vector<RegulatedNode> nodes, ControllerCosts costs)
    : kernel_(kernel), transport_(transport), name_(std::move(name)), core_(core),
      logic_(cfg, rt_window_estimate_us, std::move(nodes)), costs_(costs)
{
    if (costs_.on_sample_us < 0 || costs_.on_signal_us < 0 || costs_.on_boundary_us < 0 || costs_.poll_read_us < 0)
        throw std::invalid_argument("controller costs must be >= 0");
    transport_.subscribe(sim::kTopicRtSignal, name_, sim::EndpointKind::Controller, core_,
                         [this](const sim::Message &m) {
                             if (const auto *s = std::any_cast<node::RtSignalMsg>(&m.payload))
                                 on_signal(*s);
                         });
    if (logic_.config().scheme == metrics::SamplingScheme::SelfSampling) {
        transport_.subscribe(sim::kTopicSamples, name_, sim::EndpointKind::Controller, core_,
                             [this](const sim::Message &m) {
                                 if (const auto *s = std::any_cast<node::SampleMsg>(&m.payload))
                                     on_sample(*s);
                             });
    }
}

const std::string &ControllerNode::node_on(CoreId core) const
{
    for (const auto &n : logic_.nodes())
        if (n.core == core)
            return n.node;
    throw std::out_of_range("no regulated node on core");
}

sim::ActivationId ControllerNode::submit(std::string callback, std::vector<sim::Step> steps, bool timer_driven)
{
    sim::ActivationSpec spec;
    spec.node = name_;
    spec.callback = std::move(callback);
    spec.priority = 1;
    spec.steps = std::move(steps);
    auto id = std::make_shared<sim::ActivationId>(0);
    if (timer_driven)
        spec.on_complete = [this, id]() { timer_activations_.erase(*id); };
    *id = kernel_.submit(core_, std::move(spec));
    if (timer_driven)
        timer_activations_.insert(*id);
    return *id;
}

void ControllerNode::handle_output(sim::Activation &a, const LogicOutput &out)
{
    const TimeUs now = kernel_.now();
    for (const auto &w : out.warnings)
        kernel_.trace().add(now, sim::TraceKind::Warn, core_, name_, a.callback(), "", w);
    for (const auto &c : out.commands) {
        const std::uint64_t cid = kernel_.trace().next_seq();
        std::string detail = fmt::format("cmd={};cause={};cid={}", node::to_string(c.command), to_string(c.cause), cid);
        if (c.sample_id)
            detail += fmt::format(";sid={}", *c.sample_id);
        kernel_.trace().add(now, sim::TraceKind::Cmd, core_, c.node, a.callback(), "", std::move(detail));
        ++commands_;
        a.then(sim::Step::fixed(0, [this, c, cid](sim::Activation &act) {
            sim::Message m{std::string(sim::kTopicControl), name_, c.node, node::ControlMsg{c.command, cid},
                           fmt::format("{}:{}", node::to_string(c.command), cid)};
            const TimeUs busy = transport_.publish(sim::EndpointKind::Controller, core_, std::move(m));
            if (transport_.model().publisher_busy)
                act.set_current_cost(busy);
        }));
    }
}

void ControllerNode::open_intervals(TimeUs t)
{
    interval_start_ = t;
    for (CoreId c : logic_.cores())
        interval_bytes_start_[c] = kernel_.memory().bytes_at(c, t);
}

void ControllerNode::close_intervals(TimeUs t)
{
    for (CoreId c : logic_.cores()) {
        const metrics::BudgetLedger *l = logic_.ledger(c);
        if (!l)
            continue;
        audits_.push_back({c, l->interval_index, interval_start_, t, l->interval_budget, l->consumed,
                           kernel_.memory().bytes_at(c, t) - interval_bytes_start_[c]});
    }
}

void ControllerNode::arm_boundary(TimeUs t)
{
    boundary_timer_ = kernel_.schedule(t, sim::EventKind::IntervalBoundary, [this]() {
        boundary_timer_.reset();
        arm_boundary(kernel_.now() + logic_.config().regulation_period_us);
        std::vector<sim::Step> steps;
        steps.push_back(sim::Step::fixed(costs_.on_boundary_us, [this](sim::Activation &a) {
            const TimeUs now = kernel_.now();
            kernel_.trace().add(now, sim::TraceKind::Boundary, core_, name_, a.callback(), "", "");
            if (logic_.enabled())
                close_intervals(now);
            const LogicOutput out = logic_.on_interval_boundary();
            if (logic_.enabled())
                open_intervals(now);
            handle_output(a, out);
        }));
        submit("BOUNDARY", std::move(steps), true);
    });
}

void ControllerNode::arm_poll(TimeUs t)
{
    poll_timer_ = kernel_.schedule(t, sim::EventKind::TimerFire, [this]() {
        poll_timer_.reset();
        arm_poll(kernel_.now() + logic_.config().sampling_period_us);
        fire_poll();
    });
}

void ControllerNode::fire_poll()
{
    struct Read {
        CoreId core;
        std::optional<node::SampleMsg> sample;
    };
    auto reads = std::make_shared<std::vector<Read>>();
    for (CoreId c : logic_.cores())
        reads->push_back({c, std::nullopt});

    std::vector<sim::Step> steps;
    for (std::size_t i = 0; i < reads->size(); ++i) {
        steps.push_back(sim::Step::fixed(costs_.poll_read_us, [this, reads, i](sim::Activation &a) {
            const TimeUs now = kernel_.now();
            Read &r = (*reads)[i];
            TimeUs &from = last_poll_[r.core];
            if (now <= from)
                return;
            const metrics::PmuDelta d = kernel_.memory().read_counters(r.core, from, now);
            const std::uint64_t sid = kernel_.trace().next_seq();
            kernel_.trace().add(now, sim::TraceKind::Sample, r.core, node_on(r.core), a.callback(), "",
                                fmt::format("sid={};t0={};t1={};accesses={}", sid, from, now,
                                            metrics::l3_accesses(d)));
            from = now;
            r.sample = node::SampleMsg{d, sid, node_on(r.core)};
        }));
    }
    for (std::size_t i = 0; i < reads->size(); ++i) {
        steps.push_back(sim::Step::fixed(costs_.on_sample_us, [this, reads, i](sim::Activation &a) {
            const Read &r = (*reads)[i];
            if (!r.sample)
                return;
            ++samples_;
            const Bytes b = metrics::window_bytes(r.sample->delta, kernel_.memory().platform());
            handle_output(a, logic_.on_sample(r.core, b, r.sample->sample_id));
        }));
    }
    submit("POLL", std::move(steps), true);
}

void ControllerNode::stop_timers()
{
    if (boundary_timer_)
        kernel_.cancel(*boundary_timer_);
    if (poll_timer_)
        kernel_.cancel(*poll_timer_);
    boundary_timer_.reset();
    poll_timer_.reset();
    for (sim::ActivationId id : timer_activations_)
        kernel_.cancel_activation(id);
    timer_activations_.clear();
}

void ControllerNode::on_signal(const node::RtSignalMsg &msg)
{
    std::vector<sim::Step> steps;
    steps.push_back(sim::Step::fixed(costs_.on_signal_us, [this, msg](sim::Activation &a) {
        const TimeUs now = kernel_.now();
        const auto &cfg = logic_.config();
        if (msg.signal == node::RtSignal::Enable) {
            const LogicOutput out = logic_.on_rt_enable();
            if (out.warnings.empty()) {
                kernel_.trace().add(now, sim::TraceKind::RtEnable, core_, name_, a.callback(), "",
                                    fmt::format("activation={}", msg.activation));
                open_intervals(now);
                if (cfg.policy == metrics::RegulationPolicy::IntervalBased)
                    arm_boundary(now + cfg.regulation_period_us);
                if (cfg.scheme == metrics::SamplingScheme::ExternalSampling) {
                    for (CoreId c : logic_.cores())
                        last_poll_[c] = now;
                    arm_poll(now + cfg.sampling_period_us);
                }
            }
            handle_output(a, out);
        } else {
            if (logic_.enabled()) {
                kernel_.trace().add(now, sim::TraceKind::RtDisable, core_, name_, a.callback(), "",
                                    fmt::format("activation={}", msg.activation));
                close_intervals(now);
                stop_timers();
            }
            handle_output(a, logic_.on_rt_disable());
        }
    }));
    submit("SIGNAL", std::move(steps), false);
}

void ControllerNode::on_sample(const node::SampleMsg &msg)
{
    std::vector<sim::Step> steps;
    steps.push_back(sim::Step::fixed(costs_.on_sample_us, [this, msg](sim::Activation &a) {
        ++samples_;
        const Bytes b = metrics::window_bytes(msg.delta, kernel_.memory().platform());
        handle_output(a, logic_.on_sample(msg.delta.core_id, b, msg.sample_id));
    }));
    submit("SAMPLE", std::move(steps), false);
}

} // namespace rosguard::ctrl
