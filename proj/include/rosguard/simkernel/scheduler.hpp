#ifndef ROSGUARD_SIMKERNEL_SCHEDULER_HPP
#define ROSGUARD_SIMKERNEL_SCHEDULER_HPP

#include <cstdint>
#include <deque>
#include <functional>
#include <string>
#include <vector>

#include "rosguard/common.hpp"
#include "rosguard/workloads/profile.hpp"

namespace rosguard::sim {

using ActivationId = std::uint64_t;

class Activation;

/// A unit of execution inside a callback activation. A step either burns a
/// fixed amount of core time or runs a workload until it completes. Its
/// `on_begin` hook fires the first time the step gets the core.
struct Step {
    TimeUs cost = 0;
    std::function<void(Activation &)> on_begin;
    workloads::WorkloadProgress *workload = nullptr;

    static Step fixed(TimeUs cost, std::function<void(Activation &)> on_begin = {});
    static Step run(workloads::WorkloadProgress &progress);
};

struct ActivationSpec {
    std::string node;
    std::string callback;
    int priority = 1;
    std::vector<Step> steps;
    std::function<void()> on_complete;
};

class Activation {
public:
    ActivationId id() const { return id_; }
    const std::string &node() const { return node_; }
    const std::string &callback() const { return callback_; }
    int priority() const { return priority_; }
    std::uint64_t ready_order() const { return ready_order_; }

    /// Appends a step after the current ones.
    void then(Step step) { steps_.push_back(std::move(step)); }

    /// Replaces the remaining cost of the step that is starting. Only
    /// meaningful from inside an `on_begin` hook.
    void set_current_cost(TimeUs cost) { remaining_ = cost; }

    TimeUs remaining() const { return remaining_; }
    bool finished_step() const;

private:
    friend class Kernel;

    ActivationId id_ = 0;
    std::string node_;
    std::string callback_;
    int priority_ = 1;
    std::uint64_t ready_order_ = 0;
    std::deque<Step> steps_;
    std::function<void()> on_complete_;
    bool begun_ = false;
    bool ran_ = false;
    TimeUs remaining_ = 0;
    CoreId core_ = 0;
};

/// Strict priority-preemptive dispatch state of one core. Equal priorities
/// are served FIFO by readiness; a preempted activation keeps its place.
class CoreScheduler {
public:
    explicit CoreScheduler(CoreId id) : id_(id) {}

    CoreId id() const { return id_; }
    Activation *running() const { return running_; }
    const std::vector<Activation *> &ready() const { return ready_; }
    bool idle() const { return running_ == nullptr && ready_.empty(); }

    /// Highest-priority ready activation, earliest readiness first.
    Activation *best_ready() const;

private:
    friend class Kernel;

    void remove_ready(Activation *a);

    CoreId id_;
    Activation *running_ = nullptr;
    std::vector<Activation *> ready_;
};

} // namespace rosguard::sim

#endif // ROSGUARD_SIMKERNEL_SCHEDULER_HPP
