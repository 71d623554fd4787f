#ifndef ROSGUARD_NODEMODEL_STATE_MACHINE_HPP
#define ROSGUARD_NODEMODEL_STATE_MACHINE_HPP

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "rosguard/common.hpp"
#include "rosguard/metrics/budget.hpp"

namespace rosguard::node {

enum class NodeState { Off, On, Thr };
enum class Command { TurnOn, TurnOff, Throttle, Replenish };
enum class CallbackName { CFB, THR, PMC, NCT };

inline constexpr std::array kAllStates{NodeState::Off, NodeState::On, NodeState::Thr};
inline constexpr std::array kAllCommands{Command::TurnOn, Command::TurnOff, Command::Throttle, Command::Replenish};

std::string_view to_string(NodeState s);
std::string_view to_string(Command c);
std::string_view to_string(CallbackName c);
std::optional<NodeState> node_state_from_string(std::string_view s);
std::optional<Command> command_from_string(std::string_view s);

/// CFB > THR > PMC > NCT.
int callback_priority(CallbackName c);

struct CallbackSpec {
    CallbackName name;
    int priority;
    std::optional<TimeUs> period_us; // PMC only
    TimeUs cost_us;
};

/// Total transition function; pairs outside the diagram leave the state as is.
NodeState apply_command(NodeState state, Command cmd);

/// Callbacks that may run in `state`, highest priority first.
std::vector<CallbackName> active_callbacks(NodeState state, metrics::SamplingScheme scheme);

enum class NodeAction { CancelThrottle, DeregisterPmcTimer, StartThrottle, RegisterPmcTimer };
std::string_view to_string(NodeAction a);

struct DispatchResult {
    NodeState state;
    bool changed = false;
    // Exit actions of the old state come before entry actions of the new one.
    std::vector<NodeAction> actions;
};

DispatchResult cfb_dispatch(Command incoming, NodeState state, metrics::SamplingScheme scheme);

} // namespace rosguard::node

#endif // ROSGUARD_NODEMODEL_STATE_MACHINE_HPP
