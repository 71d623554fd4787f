#include "rosguard/expcli/presets.hpp"

#include <fmt/format.h>

#include <array>

namespace rosguard::exp {

using metrics::RegulationPolicy;
using metrics::SamplingScheme;

namespace {

constexpr std::array kPolicies{RegulationPolicy::IntervalBased, RegulationPolicy::Monolithic};
constexpr std::array kSchemes{SamplingScheme::SelfSampling, SamplingScheme::ExternalSampling};

std::string tag(const Scenario &s)
{
    return fmt::format("{}-{}-p{}-r{}-t{:.2f}-{}-{}", metrics::to_string(s.regulation.policy),
                       metrics::to_string(s.regulation.scheme), s.regulation.sampling_period_us,
                       s.regulation.regulation_period_us, s.regulation.threshold_ratio, s.rt.workload,
                       s.nrt_workloads_joined());
}

void push(std::vector<Scenario> &out, std::string_view preset, Scenario s)
{
    s.id = fmt::format("{}-{:03}-{}", preset, out.size(), tag(s));
    s.validate();
    out.push_back(std::move(s));
}

std::vector<Scenario> sampling_overhead(std::uint64_t seed)
{
    // Compute-only RT keeps monitoring on for the whole nrt run without
    // competing for memory; the budget never binds, so only sampling costs show.
    std::vector<Scenario> out;
    for (TimeUs p : {100, 200, 500, 1000, 2000, 5000}) {
        Scenario s = base_scenario("rt_compute", "bandwidth_read", seed);
        s.workloads["rt_compute"] = workloads::compute_only("rt_compute", 100'000);
        s.regulation.policy = RegulationPolicy::Monolithic;
        s.regulation.threshold_ratio = 1.0;
        s.regulation.reference_total_mb = 1.0e6;
        s.regulation.sampling_period_us = p;
        s.regulation.regulation_period_us = 100'000;
        push(out, "sampling-overhead", std::move(s));
    }
    return out;
}

std::vector<Scenario> activation_delay(std::uint64_t seed)
{
    std::vector<Scenario> out;
    for (auto scheme : kSchemes)
        for (TimeUs p : {200, 500, 1000, 2000, 5000}) {
            Scenario s = base_scenario("bandwidth_read", "bandwidth_read", seed);
            s.regulation.scheme = scheme;
            s.regulation.sampling_period_us = p;
            s.regulation.regulation_period_us = 5 * p;
            push(out, "activation-delay", std::move(s));
        }
    return out;
}

std::vector<Scenario> threshold_sweep(std::uint64_t seed)
{
    std::vector<Scenario> out;
    for (const char *w : {"mser", "bandwidth_read"})
        for (auto policy : kPolicies)
            for (double r : {0.05, 0.10, 0.15, 0.20, 0.25, 0.30}) {
                Scenario s = base_scenario(w, w, seed);
                s.regulation.policy = policy;
                s.regulation.sampling_period_us = 1000;
                s.regulation.regulation_period_us = 5000;
                s.regulation.threshold_ratio = r;
                push(out, "threshold-sweep", std::move(s));
            }
    return out;
}

std::vector<Scenario> regulation_period(std::uint64_t seed)
{
    std::vector<Scenario> out;
    for (const char *w : {"mser", "bandwidth_read"})
        for (TimeUs reg : {1000, 2000, 3000, 4000, 5000}) {
            Scenario s = base_scenario(w, w, seed);
            s.regulation.sampling_period_us = 500;
            s.regulation.regulation_period_us = reg;
            s.regulation.threshold_ratio = 0.30;
            push(out, "regulation-period", std::move(s));
        }
    return out;
}

std::vector<Scenario> combination_matrix(std::uint64_t seed)
{
    // Third RT benchmark: bandwidth_write (the source lists bandwidth_read twice).
    std::vector<Scenario> out;
    for (const char *rtw : {"mser", "bandwidth_read", "bandwidth_write"})
        for (const auto &f : workloads::benchmark_table())
            for (double r : {0.15, 0.20, 0.30}) {
                Scenario s = base_scenario(rtw, std::string(f.name), seed);
                s.regulation.threshold_ratio = r;
                push(out, "combination-matrix", std::move(s));
            }
    return out;
}

std::vector<Scenario> memguard_compare(std::uint64_t seed)
{
    std::vector<Scenario> out;
    for (const char *w : {"mser", "bandwidth_read"})
        for (double r : {0.2, 0.3, 0.4}) {
            Scenario s = base_scenario(w, w, seed);
            s.regulation.sampling_period_us = 200;
            s.regulation.regulation_period_us = 1000;
            s.regulation.threshold_ratio = r;
            push(out, "memguard-compare", std::move(s));
        }
    return out;
}

} // namespace

Scenario base_scenario(const std::string &rt_workload, const std::string &nrt_workload, std::uint64_t seed)
{
    Scenario s;
    s.rt.workload = rt_workload;
    s.rt.core = 0;
    s.nrt = {{"nrt1", nrt_workload, 1}};
    s.controller_core = 2;
    s.seed = seed;
    return s;
}

const std::vector<PresetInfo> &preset_catalog()
{
    static const std::vector<PresetInfo> catalog{
        {"sampling-overhead", "nrt self-sampling slowdown for sampling periods 100..5000 us"},
        {"activation-delay", "throttle activation delay, self vs external sampling, periods 200..5000 us"},
        {"threshold-sweep", "thresholds 5..30%, interval vs monolithic, mser and bandwidth_read pairs"},
        {"regulation-period", "regulation periods 1..5 ms at 500 us sampling, threshold 30%"},
        {"combination-matrix", "rt {mser, bandwidth_read, bandwidth_write} x all nrt benchmarks, 15/20/30%"},
        {"memguard-compare", "200 us sampling, 1 ms regulation, thresholds 20/30/40%"},
    };
    return catalog;
}

std::vector<Scenario> preset_experiments(std::string_view name, std::uint64_t seed)
{
    if (name == "sampling-overhead")
        return sampling_overhead(seed);
    if (name == "activation-delay")
        return activation_delay(seed);
    if (name == "threshold-sweep")
        return threshold_sweep(seed);
    if (name == "regulation-period")
        return regulation_period(seed);
    if (name == "combination-matrix")
        return combination_matrix(seed);
    if (name == "memguard-compare")
        return memguard_compare(seed);
    std::string names;
    for (const auto &p : preset_catalog())
        names += (names.empty() ? "" : ", ") + std::string(p.name);
    throw ConfigError(fmt::format("unknown preset '{}'; valid presets: {}", name, names));
}

} // namespace rosguard::exp
