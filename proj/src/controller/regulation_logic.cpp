#include "rosguard/controller/regulation_logic.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <stdexcept>

namespace rosguard::ctrl {

using node::Command;

std::string_view to_string(Cause c)
{
    switch (c) {
    case Cause::Exceedance:
        return "exceedance";
    case Cause::Boundary:
        return "boundary";
    case Cause::RtEnable:
        return "rt_enable";
    case Cause::RtDisable:
        return "rt_disable";
    }
    return "?";
}

RegulationLogic::RegulationLogic(metrics::RegulationConfig cfg, TimeUs rt_window_estimate_us,
                                 std::vector<RegulatedNode> nodes)
    : cfg_(cfg), rt_window_(rt_window_estimate_us), nodes_(std::move(nodes))
{
    cfg_.validate();
    if (rt_window_ <= 0)
        throw std::invalid_argument("rt_window_estimate_us must be > 0");
    std::set<std::string> names;
    for (const auto &n : nodes_)
        if (!names.insert(n.node).second)
            throw std::invalid_argument(fmt::format("duplicate regulated node '{}'", n.node));
    budget_ = metrics::interval_budget_bytes(cfg_, rt_window_);
}

std::vector<CoreId> RegulationLogic::cores() const
{
    std::vector<CoreId> out;
    for (const auto &n : nodes_)
        out.push_back(n.core);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool RegulationLogic::regulates(CoreId core) const
{
    return std::any_of(nodes_.begin(), nodes_.end(), [core](const auto &n) { return n.core == core; });
}

const metrics::BudgetLedger *RegulationLogic::ledger(CoreId core) const
{
    auto it = ledgers_.find(core);
    return it == ledgers_.end() ? nullptr : &it->second;
}

LogicOutput RegulationLogic::on_rt_enable()
{
    LogicOutput out;
    if (enabled_) {
        out.warnings.push_back("warn=enable_while_enabled;action=ignore");
        return out;
    }
    enabled_ = true;
    for (CoreId c : cores())
        ledgers_[c] = metrics::BudgetLedger{budget_, 0, 0, false};
    for (const auto &n : nodes_)
        out.commands.push_back({n.node, Command::TurnOn, Cause::RtEnable, std::nullopt});
    return out;
}

void RegulationLogic::close_all()
{
    for (const auto &[core, l] : ledgers_)
        closed_.push_back({core, l});
}

LogicOutput RegulationLogic::on_rt_disable()
{
    LogicOutput out;
    if (!enabled_) {
        out.warnings.push_back("warn=disable_while_disabled;action=ignore");
        return out;
    }
    close_all();
    enabled_ = false;
    ledgers_.clear();
    throttled_.clear();
    for (const auto &n : nodes_)
        out.commands.push_back({n.node, Command::TurnOff, Cause::RtDisable, std::nullopt});
    return out;
}

LogicOutput RegulationLogic::on_sample(CoreId core, Bytes bytes, std::optional<std::uint64_t> sample_id)
{
    LogicOutput out;
    if (!enabled_) {
        out.warnings.push_back(fmt::format("warn=sample_while_disabled;core={};action=drop", core));
        return out;
    }
    auto it = ledgers_.find(core);
    if (it == ledgers_.end()) {
        out.warnings.push_back(fmt::format("warn=unknown_core;core={};action=drop", core));
        return out;
    }
    if (bytes < 0)
        throw std::invalid_argument("negative sample");
    auto r = metrics::ledger_consume(it->second, bytes);
    it->second = r.ledger;
    if (!r.exceeded_now)
        return out;
    for (const auto &n : nodes_) {
        if (n.core != core)
            continue;
        throttled_.insert(n.node);
        out.commands.push_back({n.node, Command::Throttle, Cause::Exceedance, sample_id});
    }
    return out;
}

LogicOutput RegulationLogic::on_interval_boundary()
{
    LogicOutput out;
    if (!enabled_) {
        out.warnings.push_back("warn=boundary_while_disabled;action=ignore");
        return out;
    }
    if (cfg_.policy == metrics::RegulationPolicy::Monolithic)
        return out;
    close_all();
    for (auto &[_, l] : ledgers_)
        l = metrics::ledger_replenish(l);
    for (const auto &n : nodes_)
        if (throttled_.count(n.node))
            out.commands.push_back({n.node, Command::Replenish, Cause::Boundary, std::nullopt});
    throttled_.clear();
    return out;
}

} // namespace rosguard::ctrl
