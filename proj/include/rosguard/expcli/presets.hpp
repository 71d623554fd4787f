#ifndef ROSGUARD_EXPCLI_PRESETS_HPP
#define ROSGUARD_EXPCLI_PRESETS_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rosguard/expcli/scenario.hpp"

namespace rosguard::exp {

struct PresetInfo {
    std::string_view name;
    std::string_view description;
};

const std::vector<PresetInfo> &preset_catalog();

/// Deterministic scenario list of a named experiment. Throws ConfigError
/// listing the presets on an unknown name.
std::vector<Scenario> preset_experiments(std::string_view name, std::uint64_t seed = 1);

/// Minimal three-node scenario: rt on core 0, one nrt on core 1, controller on core 2.
Scenario base_scenario(const std::string &rt_workload, const std::string &nrt_workload, std::uint64_t seed = 1);

} // namespace rosguard::exp

#endif // ROSGUARD_EXPCLI_PRESETS_HPP
