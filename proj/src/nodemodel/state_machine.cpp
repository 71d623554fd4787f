#include "rosguard/nodemodel/state_machine.hpp"

namespace rosguard::node {

std::string_view to_string(NodeState s)
{
    switch (s) {
    case NodeState::Off:
        return "Off";
    case NodeState::On:
        return "On";
    case NodeState::Thr:
        return "Thr";
    }
    return "?";
}

std::string_view to_string(Command c)
{
    switch (c) {
    case Command::TurnOn:
        return "TurnOn";
    case Command::TurnOff:
        return "TurnOff";
    case Command::Throttle:
        return "Throttle";
    case Command::Replenish:
        return "Replenish";
    }
    return "?";
}

std::string_view to_string(CallbackName c)
{
    switch (c) {
    case CallbackName::CFB:
        return "CFB";
    case CallbackName::THR:
        return "THR";
    case CallbackName::PMC:
        return "PMC";
    case CallbackName::NCT:
        return "NCT";
    }
    return "?";
}

std::string_view to_string(NodeAction a)
{
    switch (a) {
    case NodeAction::CancelThrottle:
        return "CancelThrottle";
    case NodeAction::DeregisterPmcTimer:
        return "DeregisterPmcTimer";
    case NodeAction::StartThrottle:
        return "StartThrottle";
    case NodeAction::RegisterPmcTimer:
        return "RegisterPmcTimer";
    }
    return "?";
}

std::optional<NodeState> node_state_from_string(std::string_view s)
{
    for (NodeState st : kAllStates)
        if (to_string(st) == s)
            return st;
    return std::nullopt;
}

std::optional<Command> command_from_string(std::string_view s)
{
    for (Command c : kAllCommands)
        if (to_string(c) == s)
            return c;
    return std::nullopt;
}

int callback_priority(CallbackName c)
{
    switch (c) {
    case CallbackName::CFB:
        return 4;
    case CallbackName::THR:
        return 3;
    case CallbackName::PMC:
        return 2;
    case CallbackName::NCT:
        return 1;
    }
    return 0;
}

NodeState apply_command(NodeState state, Command cmd)
{
    switch (state) {
    case NodeState::Off:
        return cmd == Command::TurnOn ? NodeState::On : state;
    case NodeState::On:
        if (cmd == Command::Throttle)
            return NodeState::Thr;
        if (cmd == Command::TurnOff)
            return NodeState::Off;
        return state;
    case NodeState::Thr:
        if (cmd == Command::Replenish)
            return NodeState::On;
        if (cmd == Command::TurnOff)
            return NodeState::Off;
        return state;
    }
    return state;
}

std::vector<CallbackName> active_callbacks(NodeState state, metrics::SamplingScheme scheme)
{
    switch (state) {
    case NodeState::Off:
        return {CallbackName::CFB, CallbackName::NCT};
    case NodeState::On:
        if (scheme == metrics::SamplingScheme::SelfSampling)
            return {CallbackName::CFB, CallbackName::PMC, CallbackName::NCT};
        return {CallbackName::CFB, CallbackName::NCT};
    case NodeState::Thr:
        return {CallbackName::CFB, CallbackName::THR};
    }
    return {};
}

DispatchResult cfb_dispatch(Command incoming, NodeState state, metrics::SamplingScheme scheme)
{
    DispatchResult r{apply_command(state, incoming), false, {}};
    if (r.state == state)
        return r;
    r.changed = true;
    const bool self = scheme == metrics::SamplingScheme::SelfSampling;
    if (state == NodeState::Thr)
        r.actions.push_back(NodeAction::CancelThrottle);
    if (state == NodeState::On && self)
        r.actions.push_back(NodeAction::DeregisterPmcTimer);
    if (r.state == NodeState::Thr)
        r.actions.push_back(NodeAction::StartThrottle);
    if (r.state == NodeState::On && self)
        r.actions.push_back(NodeAction::RegisterPmcTimer);
    return r;
}

} // namespace rosguard::node
