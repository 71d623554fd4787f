#ifndef ROSGUARD_SIMKERNEL_TRANSPORT_HPP
#define ROSGUARD_SIMKERNEL_TRANSPORT_HPP

#include <any>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rosguard/common.hpp"
#include "rosguard/simkernel/kernel.hpp"

namespace rosguard::sim {

/// Fixed topic identifiers.
inline constexpr std::string_view kTopicSamples = "pmc_samples";
inline constexpr std::string_view kTopicControl = "control";
inline constexpr std::string_view kTopicRtSignal = "rt_signal";

enum class EndpointKind { Rt, Nrt, Controller };
std::string_view to_string(EndpointKind k);

/// Per-hop latency: constant when min == max, otherwise uniform in
/// [min, max] drawn from a stream seeded per hop.
struct Latency {
    TimeUs min_us = 44;
    TimeUs max_us = 44;

    bool constant() const { return min_us == max_us; }
    friend bool operator==(const Latency &, const Latency &) = default;
};

struct TransportModel {
    Latency default_latency{};
    std::map<std::pair<EndpointKind, EndpointKind>, Latency> per_hop;
    std::uint64_t seed = 1;
    // Publishing is synchronous in the middleware: the publishing callback
    // stays busy for the hop latency of the message it sends.
    bool publisher_busy = true;

    Latency hop(EndpointKind from, EndpointKind to) const;
    void validate() const;
};

struct Message {
    std::string topic;
    std::string from_node;
    std::optional<std::string> target; // addressed delivery on shared topics
    std::any payload;
    std::string summary; // short description copied into the trace
};

/// Simulated publish-subscribe transport on top of the kernel.
class Transport {
public:
    using Handler = std::function<void(const Message &)>;

    Transport(Kernel &kernel, TransportModel model);

    void subscribe(std::string_view topic, std::string node, EndpointKind kind, CoreId core, Handler handler);

    /// Sends `msg` at now(); each matching subscriber gets a MsgDelivery at
    /// now + latency(hop). Returns the largest latency drawn (0 when nobody
    /// listens), which is the publisher's busy time.
    TimeUs publish(EndpointKind from, CoreId from_core, Message msg);

    const TransportModel &model() const { return model_; }

private:
    struct Subscription {
        std::string topic;
        std::string node;
        EndpointKind kind;
        CoreId core;
        Handler handler;
    };

    TimeUs draw(EndpointKind from, EndpointKind to);

    Kernel &kernel_;
    TransportModel model_;
    std::vector<Subscription> subs_;
    std::map<std::pair<EndpointKind, EndpointKind>, std::mt19937_64> streams_;
};

} // namespace rosguard::sim

#endif // ROSGUARD_SIMKERNEL_TRANSPORT_HPP
