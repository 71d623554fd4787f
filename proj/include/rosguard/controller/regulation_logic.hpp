#ifndef ROSGUARD_CONTROLLER_REGULATION_LOGIC_HPP
#define ROSGUARD_CONTROLLER_REGULATION_LOGIC_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rosguard/metrics/budget.hpp"
#include "rosguard/nodemodel/state_machine.hpp"

namespace rosguard::ctrl {

enum class Cause { Exceedance, Boundary, RtEnable, RtDisable };
std::string_view to_string(Cause c);

struct RegulatedNode {
    std::string node;
    CoreId core = 0;
};

struct CommandOut {
    std::string node;
    node::Command command;
    Cause cause;
    std::optional<std::uint64_t> sample_id; // set for exceedance throttles

    friend bool operator==(const CommandOut &, const CommandOut &) = default;
};

struct LogicOutput {
    std::vector<CommandOut> commands;
    std::vector<std::string> warnings;
};

/// A ledger as it stood when its interval was closed.
struct ClosedInterval {
    CoreId core = 0;
    metrics::BudgetLedger ledger;
};

/// The control logic without any notion of time or transport: per-core
/// ledgers, threshold crossing and the command alphabet.
class RegulationLogic {
public:
    RegulationLogic(metrics::RegulationConfig cfg, TimeUs rt_window_estimate_us, std::vector<RegulatedNode> nodes);

    bool enabled() const { return enabled_; }
    const metrics::RegulationConfig &config() const { return cfg_; }
    TimeUs rt_window_estimate_us() const { return rt_window_; }
    Bytes budget_bytes() const { return budget_; }
    const std::vector<RegulatedNode> &nodes() const { return nodes_; }
    std::vector<CoreId> cores() const;
    bool regulates(CoreId core) const;

    LogicOutput on_rt_enable();
    LogicOutput on_rt_disable();
    LogicOutput on_sample(CoreId core, Bytes bytes, std::optional<std::uint64_t> sample_id = std::nullopt);
    LogicOutput on_interval_boundary();

    /// Nullptr while disabled or for an unregulated core.
    const metrics::BudgetLedger *ledger(CoreId core) const;
    bool throttled(const std::string &node) const { return throttled_.count(node) != 0; }
    const std::vector<ClosedInterval> &closed_intervals() const { return closed_; }

private:
    void close_all();

    metrics::RegulationConfig cfg_;
    TimeUs rt_window_;
    std::vector<RegulatedNode> nodes_;
    Bytes budget_;
    bool enabled_ = false;
    std::map<CoreId, metrics::BudgetLedger> ledgers_;
    std::set<std::string> throttled_;
    std::vector<ClosedInterval> closed_;
};

} // namespace rosguard::ctrl

#endif // ROSGUARD_CONTROLLER_REGULATION_LOGIC_HPP
