#ifndef ROSGUARD_CONTROLLER_CONTROLLER_NODE_HPP
#define ROSGUARD_CONTROLLER_CONTROLLER_NODE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rosguard/controller/regulation_logic.hpp"
#include "rosguard/metrics/pmu.hpp"
#include "rosguard/nodemodel/messages.hpp"
#include "rosguard/simkernel/kernel.hpp"
#include "rosguard/simkernel/transport.hpp"

namespace rosguard::ctrl {

struct ControllerCosts {
    TimeUs on_sample_us = 10;
    TimeUs on_signal_us = 0;
    TimeUs on_boundary_us = 0;
    TimeUs poll_read_us = 15; // per regulated core
};

/// Bytes a regulated core actually moved during one controller interval,
/// next to what the ledger was charged.
struct IntervalAudit {
    CoreId core = 0;
    std::int64_t interval_index = 0;
    TimeUs start_us = 0;
    TimeUs end_us = 0;
    Bytes budget = 0;
    Bytes consumed = 0;
    Bytes actual = 0;
};

/// The controller node on its dedicated core. Every input (sample, poll,
/// signal, boundary) becomes one callback activation; all share one priority
/// and run FIFO. Commands are traced when decided and published afterwards.
class ControllerNode {
public:
    ControllerNode(sim::Kernel &kernel, sim::Transport &transport, std::string name, CoreId core,
                   metrics::RegulationConfig cfg, TimeUs rt_window_estimate_us, std::vector<RegulatedNode> nodes,
                   ControllerCosts costs = {});

    ControllerNode(const ControllerNode &) = delete;
    ControllerNode &operator=(const ControllerNode &) = delete;

    const std::string &name() const { return name_; }
    CoreId core() const { return core_; }
    const RegulationLogic &logic() const { return logic_; }
    std::uint64_t samples_processed() const { return samples_; }
    std::uint64_t commands_sent() const { return commands_; }
    const std::vector<IntervalAudit> &audits() const { return audits_; }

private:
    sim::ActivationId submit(std::string callback, std::vector<sim::Step> steps, bool timer_driven);
    void on_signal(const node::RtSignalMsg &msg);
    void on_sample(const node::SampleMsg &msg);
    void handle_output(sim::Activation &a, const LogicOutput &out);
    void open_intervals(TimeUs t);
    void close_intervals(TimeUs t);
    void arm_boundary(TimeUs t);
    void arm_poll(TimeUs t);
    void fire_poll();
    void stop_timers();
    const std::string &node_on(CoreId core) const;

    sim::Kernel &kernel_;
    sim::Transport &transport_;
    std::string name_;
    CoreId core_;
    RegulationLogic logic_;
    ControllerCosts costs_;

    std::optional<sim::EventHandle> boundary_timer_;
    std::optional<sim::EventHandle> poll_timer_;
    std::set<sim::ActivationId> timer_activations_;
    std::map<CoreId, TimeUs> last_poll_;
    std::map<CoreId, Bytes> interval_bytes_start_;
    TimeUs interval_start_ = 0;

    std::uint64_t samples_ = 0;
    std::uint64_t commands_ = 0;
    std::vector<IntervalAudit> audits_;
};

} // namespace rosguard::ctrl

#endif // ROSGUARD_CONTROLLER_CONTROLLER_NODE_HPP
