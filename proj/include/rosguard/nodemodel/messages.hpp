#ifndef ROSGUARD_NODEMODEL_MESSAGES_HPP
#define ROSGUARD_NODEMODEL_MESSAGES_HPP

#include <cstdint>
#include <string>

#include "rosguard/metrics/pmu.hpp"
#include "rosguard/nodemodel/rt_lifecycle.hpp"
#include "rosguard/nodemodel/state_machine.hpp"

namespace rosguard::node {

/// Payload on the control topic.
struct ControlMsg {
    Command command;
    std::uint64_t command_id; // trace ordinal of the controller's cmd record
};

/// Payload on the sample topic.
struct SampleMsg {
    metrics::PmuDelta delta;
    std::uint64_t sample_id; // trace ordinal of the sample record
    std::string node;
};

/// Payload on the RT signal topic.
struct RtSignalMsg {
    RtSignal signal;
    int activation;
};

} // namespace rosguard::node

#endif // ROSGUARD_NODEMODEL_MESSAGES_HPP
