#include "rosguard/simkernel/kernel.hpp"

#include <fmt/format.h>

#include <stdexcept>

namespace rosguard::sim {

Kernel::Kernel(metrics::PlatformParams platform, int num_cores)
    : wakes_(static_cast<std::size_t>(num_cores)), memory_(platform, num_cores)
{
    cores_.reserve(static_cast<std::size_t>(num_cores));
    for (CoreId c = 0; c < num_cores; ++c)
        cores_.emplace_back(c);
}

EventHandle Kernel::schedule(TimeUs t, EventKind kind, std::function<void()> fn)
{
    if (t < now_)
        throw std::logic_error(fmt::format("event scheduled in the past: t={} now={}", t, now_));
    EventHandle h{t, kind == EventKind::IntervalBoundary ? 1 : 0, next_seq_++};
    queue_.emplace(h, Pending{kind, std::move(fn)});
    return h;
}

bool Kernel::cancel(const EventHandle &h)
{
    return queue_.erase(h) != 0;
}

void Kernel::run_until(TimeUs t_end)
{
    stop_ = false;
    settle();
    while (!stop_ && !queue_.empty()) {
        auto it = queue_.begin();
        if (it->first.t_us > t_end)
            break;
        advance_to(it->first.t_us);
        auto fn = std::move(it->second.fn);
        queue_.erase(it);
        ++processed_;
        if (fn)
            fn();
        if (queue_.empty() || queue_.begin()->first.t_us > now_)
            settle();
    }
    if (!stop_ && t_end < kForever && now_ < t_end)
        advance_to(t_end);
}

ActivationId Kernel::submit(CoreId core, ActivationSpec spec)
{
    if (core < 0 || core >= num_cores())
        throw std::out_of_range(fmt::format("submit to unknown core {}", core));
    auto a = std::make_unique<Activation>();
    a->id_ = next_activation_++;
    a->node_ = std::move(spec.node);
    a->callback_ = std::move(spec.callback);
    a->priority_ = spec.priority;
    a->ready_order_ = next_ready_order_++;
    a->steps_.assign(std::make_move_iterator(spec.steps.begin()), std::make_move_iterator(spec.steps.end()));
    a->on_complete_ = std::move(spec.on_complete);
    a->core_ = core;
    Activation *raw = a.get();
    activations_.emplace(raw->id_, std::move(a));
    cores_[static_cast<std::size_t>(core)].ready_.push_back(raw);
    return raw->id_;
}

bool Kernel::cancel_activation(ActivationId id)
{
    auto it = activations_.find(id);
    if (it == activations_.end())
        return false;
    Activation *a = it->second.get();
    auto &core = cores_[static_cast<std::size_t>(a->core_)];
    if (core.running_ == a) {
        end_slice(core, *a, "canceled");
        core.running_ = nullptr;
    } else {
        core.remove_ready(a);
        // A preempted activation leaves the ready set for good; record it so
        // trace replays do not keep it waiting.
        if (a->ran_)
            trace_.add(now_, TraceKind::CbEnd, core.id_, a->node_, a->callback_, "",
                       fmt::format("act={};reason=canceled", a->id_));
    }
    activations_.erase(it);
    return true;
}

void Kernel::advance_to(TimeUs t)
{
    const TimeUs dt = t - now_;
    if (dt < 0)
        throw std::logic_error("kernel clock cannot move backwards");
    if (dt == 0)
        return;
    const auto moved = memory_.advance(dt);
    for (auto &core : cores_) {
        Activation *a = core.running_;
        if (!a || !a->begun_ || a->steps_.empty())
            continue;
        Step &s = a->steps_.front();
        if (s.workload) {
            if (s.workload->in_memory_part())
                s.workload->add_memory(moved[static_cast<std::size_t>(core.id_)]);
            else
                s.workload->add_compute(dt);
        } else if (a->remaining_ != kForever) {
            a->remaining_ -= dt;
            if (a->remaining_ < 0)
                throw std::logic_error("fixed step overran its wake-up");
        }
    }
    now_ = t;
}

void Kernel::start_slice(CoreScheduler &core, Activation &a)
{
    std::string detail = fmt::format("act={};prio={}", a.id_, a.priority_);
    if (a.ran_)
        detail += ";resume=1";
    a.ran_ = true;
    trace_.add(now_, TraceKind::CbStart, core.id_, a.node_, a.callback_, "", std::move(detail));
}

void Kernel::end_slice(CoreScheduler &core, Activation &a, const char *reason)
{
    trace_.add(now_, TraceKind::CbEnd, core.id_, a.node_, a.callback_, "",
               fmt::format("act={};reason={}", a.id_, reason));
}

bool Kernel::settle_core(CoreScheduler &core)
{
    bool changed = false;
    for (;;) {
        Activation *r = core.running_;
        if (r && r->begun_ && r->finished_step()) {
            r->steps_.pop_front();
            r->begun_ = false;
            changed = true;
            if (r->steps_.empty()) {
                end_slice(core, *r, "done");
                core.running_ = nullptr;
                auto done = std::move(r->on_complete_);
                activations_.erase(r->id_);
                if (done)
                    done();
            }
            continue;
        }
        Activation *best = core.best_ready();
        if (best && (!core.running_ || best->priority_ > core.running_->priority_)) {
            if (core.running_) {
                end_slice(core, *core.running_, "preempted");
                core.ready_.push_back(core.running_);
            }
            core.remove_ready(best);
            core.running_ = best;
            start_slice(core, *best);
            changed = true;
            continue;
        }
        r = core.running_;
        if (r && !r->begun_) {
            r->begun_ = true;
            Step &s = r->steps_.front();
            r->remaining_ = s.workload ? 0 : s.cost;
            if (s.on_begin) {
                auto hook = s.on_begin;
                hook(*r);
            }
            changed = true;
            continue;
        }
        break;
    }
    return changed;
}

void Kernel::settle()
{
    bool any = true;
    while (any) {
        any = false;
        for (auto &core : cores_)
            any = settle_core(core) || any;
    }
    refresh_rates_and_wakes();
}

void Kernel::refresh_rates_and_wakes()
{
    for (auto &core : cores_) {
        memmodel::RateBps demand = 0;
        Activation *a = core.running_;
        if (a && a->begun_ && !a->steps_.empty() && a->steps_.front().workload)
            demand = a->steps_.front().workload->current_demand();
        memory_.set_demand(core.id_, demand);
    }
    for (auto &core : cores_) {
        std::optional<TimeUs> wake;
        Activation *a = core.running_;
        if (a && a->begun_ && !a->steps_.empty()) {
            const Step &s = a->steps_.front();
            if (s.workload) {
                if (s.workload->in_memory_part()) {
                    const TimeUs dt = memory_.time_to_move(core.id_, s.workload->memory_left());
                    if (dt < kForever)
                        wake = now_ + dt;
                } else if (!s.workload->done()) {
                    wake = now_ + s.workload->compute_left();
                }
            } else if (a->remaining_ != kForever) {
                wake = now_ + a->remaining_;
            }
        }
        auto &slot = wakes_[static_cast<std::size_t>(core.id_)];
        if (slot && wake && slot->t_us == *wake && pending(*slot))
            continue;
        if (slot)
            cancel(*slot);
        slot.reset();
        if (wake) {
            const bool workload_step = a->steps_.front().workload != nullptr;
            slot = schedule(*wake, workload_step ? EventKind::WorkloadPhase : EventKind::CallbackEnd, {});
        }
    }
}

} // namespace rosguard::sim
