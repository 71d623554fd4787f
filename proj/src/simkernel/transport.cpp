#include "rosguard/simkernel/transport.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <stdexcept>

namespace rosguard::sim {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

std::string_view to_string(EndpointKind k)
{
    switch (k) {
    case EndpointKind::Rt:
        return "rt";
    case EndpointKind::Nrt:
        return "nrt";
    case EndpointKind::Controller:
        return "controller";
    }
    return "?";
}

Latency TransportModel::hop(EndpointKind from, EndpointKind to) const
{
    auto it = per_hop.find({from, to});
    return it == per_hop.end() ? default_latency : it->second;
}

void TransportModel::validate() const
{
    auto check = [](const Latency &l) {
        if (l.min_us < 0 || l.max_us < l.min_us)
            throw std::invalid_argument("transport latency needs 0 <= min <= max");
    };
    check(default_latency);
    for (const auto &[_, l] : per_hop)
        check(l);
}

Transport::Transport(Kernel &kernel, TransportModel model) : kernel_(kernel), model_(std::move(model))
{
    model_.validate();
}

void Transport::subscribe(std::string_view topic, std::string node, EndpointKind kind, CoreId core, Handler handler)
{
    subs_.push_back(Subscription{std::string(topic), std::move(node), kind, core, std::move(handler)});
}

TimeUs Transport::draw(EndpointKind from, EndpointKind to)
{
    const Latency l = model_.hop(from, to);
    if (l.constant())
        return l.min_us;
    auto key = std::make_pair(from, to);
    auto it = streams_.find(key);
    if (it == streams_.end()) {
        const auto hop_id = static_cast<std::uint64_t>(from) * 3 + static_cast<std::uint64_t>(to);
        it = streams_.emplace(key, std::mt19937_64(splitmix64(model_.seed ^ splitmix64(hop_id)))).first;
    }
    const auto span = static_cast<std::uint64_t>(l.max_us - l.min_us) + 1;
    return l.min_us + static_cast<TimeUs>(it->second() % span);
}

TimeUs Transport::publish(EndpointKind from, CoreId from_core, Message msg)
{
    TimeUs busiest = 0;
    int recipients = 0;
    for (std::size_t i = 0; i < subs_.size(); ++i) {
        const auto &sub = subs_[i];
        if (sub.topic != msg.topic || (msg.target && *msg.target != sub.node))
            continue;
        const TimeUs lat = draw(from, sub.kind);
        busiest = std::max(busiest, lat);
        ++recipients;
        kernel_.schedule(kernel_.now() + lat, EventKind::MsgDelivery, [this, i, msg]() {
            const Subscription &target = subs_[i];
            kernel_.trace().add(kernel_.now(), TraceKind::Deliver, target.core, target.node, "", "",
                                fmt::format("topic={};from={};msg={}", msg.topic, msg.from_node, msg.summary));
            target.handler(msg);
        });
    }
    kernel_.trace().add(kernel_.now(), TraceKind::Publish, from_core, msg.from_node, "", "",
                        fmt::format("topic={};msg={};recipients={}", msg.topic, msg.summary, recipients));
    return busiest;
}

} // namespace rosguard::sim
