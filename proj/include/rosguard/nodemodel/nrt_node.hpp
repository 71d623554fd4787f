#ifndef ROSGUARD_NODEMODEL_NRT_NODE_HPP
#define ROSGUARD_NODEMODEL_NRT_NODE_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "rosguard/metrics/budget.hpp"
#include "rosguard/nodemodel/messages.hpp"
#include "rosguard/nodemodel/state_machine.hpp"
#include "rosguard/simkernel/kernel.hpp"
#include "rosguard/simkernel/transport.hpp"
#include "rosguard/workloads/profile.hpp"

namespace rosguard::node {

/// FixedDelay re-arms the PMC timer one period after the previous PMC
/// activation completed; FixedRate fires on the grid turn_on + k * period.
enum class PmcTimerMode { FixedDelay, FixedRate };
std::string_view to_string(PmcTimerMode m);

struct NodeTiming {
    TimeUs cfb_cost_us = 5;
    TimeUs pmc_cost_us = 15;
    PmcTimerMode timer_mode = PmcTimerMode::FixedDelay;
};

/// Regulated node: NCT runs the workload, CFB applies control commands, THR
/// occupies the core while throttled and PMC publishes counter samples.
class NrtNode {
public:
    NrtNode(sim::Kernel &kernel, sim::Transport &transport, std::string name, CoreId core,
            workloads::WorkloadProfile profile, metrics::SamplingScheme scheme, TimeUs sampling_period_us,
            NodeTiming timing = {});

    NrtNode(const NrtNode &) = delete;
    NrtNode &operator=(const NrtNode &) = delete;

    /// Releases the workload at `t` (>= kernel now).
    void start(TimeUs t = 0);

    const std::string &name() const { return name_; }
    CoreId core() const { return core_; }
    NodeState state() const { return state_; }
    const workloads::WorkloadProfile &profile() const { return profile_; }

    std::optional<TimeUs> release_time() const { return release_; }
    std::optional<TimeUs> completion_time() const { return completion_; }
    std::uint64_t samples_published() const { return samples_; }
    std::uint64_t throttle_count() const { return throttles_; }
    /// Total time spent in Thr, including an open episode up to `now`.
    TimeUs throttled_us(TimeUs now) const;

private:
    void on_control(const ControlMsg &msg);
    void apply(const ControlMsg &msg);
    void arm_pmc_timer(TimeUs from);
    void fire_pmc();
    void drop_pmc(bool keep_read);

    sim::Kernel &kernel_;
    sim::Transport &transport_;
    std::string name_;
    CoreId core_;
    workloads::WorkloadProfile profile_;
    workloads::WorkloadProgress progress_;
    metrics::SamplingScheme scheme_;
    TimeUs period_;
    NodeTiming timing_;

    NodeState state_ = NodeState::Off;
    std::optional<sim::ActivationId> thr_;
    std::optional<sim::ActivationId> pmc_;
    bool pmc_read_done_ = false;
    std::optional<sim::EventHandle> pmc_timer_;
    TimeUs window_start_ = 0;
    TimeUs grid_anchor_ = 0;

    std::optional<TimeUs> release_;
    std::optional<TimeUs> completion_;
    std::uint64_t samples_ = 0;
    std::uint64_t throttles_ = 0;
    TimeUs throttled_total_ = 0;
    TimeUs thr_since_ = 0;
};

} // namespace rosguard::node

#endif // ROSGUARD_NODEMODEL_NRT_NODE_HPP
