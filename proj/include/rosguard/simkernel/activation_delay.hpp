#ifndef ROSGUARD_SIMKERNEL_ACTIVATION_DELAY_HPP
#define ROSGUARD_SIMKERNEL_ACTIVATION_DELAY_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rosguard/simkernel/trace.hpp"

namespace rosguard::sim {

/// One throttle episode: the exceeding sample was read at `sample_t` and the
/// THR callback first got the core at `throttle_start`.
struct DelayEpisode {
    std::string node;
    std::uint64_t sample_id = 0;
    std::uint64_t command_id = 0;
    TimeUs sample_t = 0;
    TimeUs throttle_start = 0;

    TimeUs delay_us() const { return throttle_start - sample_t; }
};

struct DelaySummary {
    std::size_t count = 0;
    TimeUs min_us = 0;
    TimeUs median_us = 0; // lower median
    TimeUs max_us = 0;
};

/// Reconstructs throttle episodes from a trace by following the
/// sample -> cmd -> state -> THR cb_start links (sid / cid detail keys).
std::vector<DelayEpisode> measure_activation_delay(const EventTrace &trace);

std::optional<DelaySummary> summarize_delays(std::span<const DelayEpisode> episodes);

} // namespace rosguard::sim

#endif // ROSGUARD_SIMKERNEL_ACTIVATION_DELAY_HPP
