#ifndef ROSGUARD_NODEMODEL_RT_NODE_HPP
#define ROSGUARD_NODEMODEL_RT_NODE_HPP

#include <optional>
#include <string>
#include <vector>

#include "rosguard/nodemodel/rt_lifecycle.hpp"
#include "rosguard/simkernel/kernel.hpp"
#include "rosguard/simkernel/transport.hpp"
#include "rosguard/workloads/profile.hpp"

namespace rosguard::node {

/// Response of one RT activation, measured from release to the end of its
/// workload (the Disable publication is not included).
struct RtActivationRecord {
    int index = 0;
    TimeUs release_us = 0;
    std::optional<TimeUs> done_us;

    std::optional<TimeUs> response_us() const
    {
        return done_us ? std::optional<TimeUs>(*done_us - release_us) : std::nullopt;
    }
};

/// Critical node. Each activation runs [publish Enable][workload][publish
/// Disable] as one callback.
class RtNode {
public:
    RtNode(sim::Kernel &kernel, sim::Transport &transport, std::string name, CoreId core,
           workloads::WorkloadProfile profile, RtLifecycle lifecycle, int priority = 1);

    RtNode(const RtNode &) = delete;
    RtNode &operator=(const RtNode &) = delete;

    /// Schedules every release of the lifecycle.
    void start();

    const std::string &name() const { return name_; }
    CoreId core() const { return core_; }
    const workloads::WorkloadProfile &profile() const { return profile_; }
    const RtLifecycle &lifecycle() const { return lifecycle_; }
    const std::vector<RtActivationRecord> &activations() const { return records_; }
    bool all_done() const;

private:
    void release(int k);
    void signal(sim::Activation &a, RtSignal s, int k);

    sim::Kernel &kernel_;
    sim::Transport &transport_;
    std::string name_;
    CoreId core_;
    workloads::WorkloadProfile profile_;
    RtLifecycle lifecycle_;
    int priority_;

    std::vector<RtActivationRecord> records_;
    workloads::WorkloadProgress progress_;
    std::optional<sim::ActivationId> live_;
};

} // namespace rosguard::node

#endif // ROSGUARD_NODEMODEL_RT_NODE_HPP
