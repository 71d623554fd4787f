#include "rosguard/expcli/scenario.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <set>

namespace rosguard::exp {

workloads::WorkloadProfile Scenario::resolve(const std::string &name) const
{
    if (auto it = workloads.find(name); it != workloads.end())
        return it->second;
    try {
        return workloads::preset(name, preset_duration_us);
    } catch (const std::invalid_argument &e) {
        throw ConfigError(fmt::format("workload '{}': {}", name, e.what()));
    }
}

TimeUs Scenario::effective_rt_window_us() const
{
    if (rt_window_estimate_us > 0)
        return rt_window_estimate_us;
    return workloads::isolation_time(resolve(rt.workload));
}

int Scenario::num_cores() const
{
    CoreId m = std::max(rt.core, controller_core);
    for (const auto &n : nrt)
        m = std::max(m, n.core);
    return m + 1;
}

std::string Scenario::nrt_workloads_joined() const
{
    std::string out;
    for (const auto &n : nrt) {
        if (!out.empty())
            out += '+';
        out += n.workload;
    }
    return out;
}

void Scenario::validate() const
{
    auto wrap = [](const char *field, auto &&fn) {
        try {
            fn();
        } catch (const ConfigError &) {
            throw;
        } catch (const std::exception &e) {
            throw ConfigError(fmt::format("{}: {}", field, e.what()));
        }
    };
    wrap("platform", [&] { platform.validate(); });
    wrap("regulation", [&] { regulation.validate(); });
    wrap("transport", [&] { transport.validate(); });
    if (writeback_fraction < 0.0 || writeback_fraction > 1.0)
        throw ConfigError("platform.writeback_fraction must be in [0,1]");
    if (duration_us <= 0)
        throw ConfigError("scenario.duration_us must be > 0");
    if (rt_window_estimate_us < 0)
        throw ConfigError("scenario.rt_window_estimate_us must be >= 0");
    if (preset_duration_us <= 0)
        throw ConfigError("scenario.preset_duration_us must be > 0");
    if (timing.cfb_cost_us < 0 || timing.pmc_cost_us < 0)
        throw ConfigError("costs: callback costs must be >= 0");
    if (controller_costs.on_sample_us < 0 || controller_costs.on_signal_us < 0 ||
        controller_costs.on_boundary_us < 0 || controller_costs.poll_read_us < 0)
        throw ConfigError("costs: controller costs must be >= 0");
    if (nrt.empty())
        throw ConfigError("nrt: at least one regulated node is required");

    for (CoreId c : {rt.core, controller_core})
        if (c < 0)
            throw ConfigError("core ids must be >= 0");
    std::set<std::string> names{rt.name};
    for (const auto &n : nrt) {
        if (n.core < 0)
            throw ConfigError(fmt::format("nrt.{}.core must be >= 0", n.name));
        if (n.core == controller_core)
            throw ConfigError(fmt::format("scenario.controller_core {} hosts nrt node '{}'; the controller needs a "
                                          "dedicated core",
                                          controller_core, n.name));
        if (n.core == rt.core)
            throw ConfigError(fmt::format("nrt.{}.core {} is the rt core; rt and nrt nodes need distinct cores",
                                          n.name, n.core));
        if (!names.insert(n.name).second)
            throw ConfigError(fmt::format("duplicate node name '{}'", n.name));
        wrap("nrt workload", [&] { resolve(n.workload).validate(); });
    }
    if (rt.core == controller_core)
        throw ConfigError(fmt::format("scenario.controller_core {} hosts the rt node; the controller needs a dedicated "
                                      "core",
                                      controller_core));
    wrap("rt workload", [&] { resolve(rt.workload).validate(); });
    node::RtLifecycle lc = rt.lifecycle;
    if (lc.rt_window_us == 0)
        lc.rt_window_us = effective_rt_window_us();
    wrap("rt", [&] { lc.validate(); });
}

} // namespace rosguard::exp
