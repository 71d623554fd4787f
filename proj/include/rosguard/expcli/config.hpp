#ifndef ROSGUARD_EXPCLI_CONFIG_HPP
#define ROSGUARD_EXPCLI_CONFIG_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "rosguard/expcli/scenario.hpp"

namespace rosguard::exp {

/// Optional cross product over regulation parameters, from a [sweep] section.
struct SweepAxes {
    std::vector<double> threshold_ratios;
    std::vector<TimeUs> sampling_periods_us;
    std::vector<TimeUs> regulation_periods_us;
    std::vector<metrics::RegulationPolicy> policies;
    std::vector<metrics::SamplingScheme> schemes;

    bool empty() const;
};

struct ConfigFile {
    Scenario scenario;
    SweepAxes sweep;
};

/// INI-style scenario file; see configs/ and the README for the key list.
/// Unknown sections or keys and invalid values raise ConfigError.
ConfigFile parse_config_string(std::string_view text);
ConfigFile parse_config_file(const std::filesystem::path &path);

/// The base scenario alone when the sweep is empty, otherwise one scenario
/// per point of the cross product, ids suffixed with the point index.
std::vector<Scenario> expand_sweep(const ConfigFile &cfg);

} // namespace rosguard::exp

#endif // ROSGUARD_EXPCLI_CONFIG_HPP
