#include "rosguard/simkernel/activation_delay.hpp"

#include <algorithm>
#include <unordered_map>

namespace rosguard::sim {

std::vector<DelayEpisode> measure_activation_delay(const EventTrace &trace)
{
    const auto &recs = trace.records();
    std::unordered_map<std::uint64_t, TimeUs> sample_time;
    std::unordered_map<std::uint64_t, std::uint64_t> cmd_sample;
    std::vector<DelayEpisode> out;

    for (std::size_t i = 0; i < recs.size(); ++i) {
        const auto &r = recs[i];
        if (r.kind == TraceKind::Sample) {
            auto d = parse_detail(r.detail);
            if (auto it = d.find("sid"); it != d.end())
                sample_time.emplace(std::stoull(it->second), r.t_us);
        } else if (r.kind == TraceKind::Cmd) {
            auto d = parse_detail(r.detail);
            auto cid = d.find("cid");
            auto sid = d.find("sid");
            if (cid != d.end() && sid != d.end())
                cmd_sample.emplace(std::stoull(cid->second), std::stoull(sid->second));
        } else if (r.kind == TraceKind::State && r.state == "Thr") {
            auto d = parse_detail(r.detail);
            auto cid = d.find("cid");
            if (cid == d.end())
                continue;
            const std::uint64_t command = std::stoull(cid->second);
            auto cs = cmd_sample.find(command);
            if (cs == cmd_sample.end())
                continue;
            auto st = sample_time.find(cs->second);
            if (st == sample_time.end())
                continue;
            for (std::size_t j = i + 1; j < recs.size(); ++j) {
                const auto &n = recs[j];
                if (n.kind == TraceKind::CbStart && n.node == r.node && n.callback == "THR") {
                    out.push_back(DelayEpisode{r.node, cs->second, command, st->second, n.t_us});
                    break;
                }
            }
        }
    }
    return out;
}

std::optional<DelaySummary> summarize_delays(std::span<const DelayEpisode> episodes)
{
    if (episodes.empty())
        return std::nullopt;
    std::vector<TimeUs> d;
    d.reserve(episodes.size());
    for (const auto &e : episodes)
        d.push_back(e.delay_us());
    std::sort(d.begin(), d.end());
    return DelaySummary{d.size(), d.front(), d[(d.size() - 1) / 2], d.back()};
}

} // namespace rosguard::sim
