#ifndef ROSGUARD_EXPCLI_SCENARIO_HPP
#define ROSGUARD_EXPCLI_SCENARIO_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "rosguard/controller/controller_node.hpp"
#include "rosguard/metrics/budget.hpp"
#include "rosguard/metrics/pmu.hpp"
#include "rosguard/nodemodel/nrt_node.hpp"
#include "rosguard/nodemodel/rt_lifecycle.hpp"
#include "rosguard/simkernel/transport.hpp"
#include "rosguard/workloads/profile.hpp"

namespace rosguard::exp {

/// Invalid or inconsistent scenario input. Maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RtSpec {
    std::string name = "rt";
    std::string workload = "mser";
    CoreId core = 0;
    int priority = 1;
    // rt_window_us is filled from the scenario's window estimate when 0.
    node::RtLifecycle lifecycle{};
};

struct NrtSpec {
    std::string name;
    std::string workload;
    CoreId core = 1;
};

struct Scenario {
    std::string id = "scenario";
    metrics::PlatformParams platform{};
    double writeback_fraction = 0.0;
    metrics::RegulationConfig regulation{};
    // false runs the nodes without a controller (no sampling, no signals consumed).
    bool regulation_enabled = true;
    sim::TransportModel transport{};
    node::NodeTiming timing{};
    ctrl::ControllerCosts controller_costs{};
    RtSpec rt{};
    std::vector<NrtSpec> nrt{{"nrt1", "mser", 1}};
    CoreId controller_core = 2;
    std::uint64_t seed = 1;
    TimeUs duration_us = 5'000'000; // simulation cap
    // Window used to scale interval budgets; 0 means the RT workload's isolation time.
    TimeUs rt_window_estimate_us = 0;
    TimeUs preset_duration_us = workloads::kDefaultPresetDurationUs;
    std::map<std::string, workloads::WorkloadProfile> workloads; // user profiles, shadow presets

    /// Profile by name: user-defined first, then the benchmark presets.
    workloads::WorkloadProfile resolve(const std::string &name) const;
    TimeUs effective_rt_window_us() const;
    int num_cores() const;
    std::string nrt_workloads_joined() const;

    /// Throws ConfigError naming the offending field.
    void validate() const;
};

} // namespace rosguard::exp

#endif // ROSGUARD_EXPCLI_SCENARIO_HPP
