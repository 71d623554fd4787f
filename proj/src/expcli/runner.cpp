#include "rosguard/expcli/runner.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <exception>
#include <memory>
#include <thread>

#include "rosguard/nodemodel/nrt_node.hpp"
#include "rosguard/nodemodel/rt_node.hpp"

namespace rosguard::exp {

namespace {

std::string baseline_key(const workloads::WorkloadProfile &p, const metrics::PlatformParams &pl)
{
    std::string k = fmt::format("{}|{}|{}|{}", p.name, pl.freq_hz, pl.cache_line_bytes, pl.capacity_mb_s);
    for (const auto &ph : p.phases)
        k += fmt::format("|{}:{}:{}", ph.memory_bytes, ph.demand_mb_s, ph.compute_us);
    return k;
}

} // namespace

TimeUs isolation_baseline(const workloads::WorkloadProfile &profile, const metrics::PlatformParams &platform)
{
    sim::Kernel kernel(platform, 1);
    sim::Transport transport(kernel, sim::TransportModel{});
    node::NrtNode n(kernel, transport, "iso", 0, profile, metrics::SamplingScheme::ExternalSampling, 1);
    n.start(0);
    kernel.run_until(kForever);
    if (!n.completion_time())
        throw std::runtime_error(fmt::format("isolation run of '{}' did not complete", profile.name));
    return *n.completion_time();
}

TimeUs BaselineCache::get(const workloads::WorkloadProfile &profile, const metrics::PlatformParams &platform)
{
    const std::string key = baseline_key(profile, platform);
    {
        std::lock_guard lock(mu_);
        if (auto it = cache_.find(key); it != cache_.end())
            return it->second;
    }
    const TimeUs t = isolation_baseline(profile, platform);
    std::lock_guard lock(mu_);
    cache_.emplace(key, t);
    return t;
}

RunResult run_scenario(const Scenario &s, BaselineCache *cache)
{
    s.validate();
    BaselineCache local;
    BaselineCache &baselines = cache ? *cache : local;

    sim::Kernel kernel(s.platform, s.num_cores());
    kernel.memory().set_writeback_fraction(s.writeback_fraction);
    sim::TransportModel tm = s.transport;
    tm.seed = s.seed;
    sim::Transport transport(kernel, tm);

    const TimeUs window = s.effective_rt_window_us();
    node::RtLifecycle lc = s.rt.lifecycle;
    if (lc.rt_window_us == 0)
        lc.rt_window_us = window;
    const auto rt_profile = s.resolve(s.rt.workload);
    node::RtNode rt(kernel, transport, s.rt.name, s.rt.core, rt_profile, lc, s.rt.priority);

    std::vector<std::unique_ptr<node::NrtNode>> nrt;
    std::vector<ctrl::RegulatedNode> regulated;
    for (const auto &spec : s.nrt) {
        nrt.push_back(std::make_unique<node::NrtNode>(kernel, transport, spec.name, spec.core, s.resolve(spec.workload),
                                                      s.regulation.scheme, s.regulation.sampling_period_us,
                                                      s.timing));
        regulated.push_back({spec.name, spec.core});
    }
    std::unique_ptr<ctrl::ControllerNode> controller;
    if (s.regulation_enabled)
        controller = std::make_unique<ctrl::ControllerNode>(kernel, transport, "controller", s.controller_core,
                                                            s.regulation, window, regulated, s.controller_costs);

    rt.start();
    for (auto &n : nrt)
        n->start(0);
    kernel.run_until(s.duration_us);

    RunResult res;
    res.end_time_us = kernel.now();
    ResultRow &row = res.row;
    row.scenario_id = s.id;
    row.policy = std::string(metrics::to_string(s.regulation.policy));
    row.scheme = std::string(metrics::to_string(s.regulation.scheme));
    row.sampling_us = s.regulation.sampling_period_us;
    row.regulation_us = s.regulation.regulation_period_us;
    row.threshold_ratio = s.regulation.threshold_ratio;
    row.rt_workload = s.rt.workload;
    row.nrt_workload = s.nrt_workloads_joined();
    row.complete = rt.all_done();

    res.rt_isolation_us = baselines.get(rt_profile, s.platform);
    for (const auto &a : rt.activations())
        res.rt_response_us = std::max(res.rt_response_us, a.response_us().value_or(res.end_time_us - a.release_us));
    row.rt_slowdown = metrics::slowdown_ratio(res.rt_response_us, res.rt_isolation_us);

    for (const auto &n : nrt) {
        const TimeUs iso = baselines.get(n->profile(), s.platform);
        TimeUs resp = res.end_time_us - *n->release_time();
        if (n->completion_time())
            resp = *n->completion_time() - *n->release_time();
        else
            row.complete = false;
        res.nrt_isolation_us.push_back(iso);
        res.nrt_response_us.push_back(resp);
        row.nrt_slowdowns.push_back(metrics::slowdown_ratio(resp, iso));
        row.throttle_count += n->throttle_count();
        row.throttled_us += n->throttled_us(res.end_time_us);
    }
    row.nrt_slowdown = *std::max_element(row.nrt_slowdowns.begin(), row.nrt_slowdowns.end());

    res.delays = sim::measure_activation_delay(kernel.trace());
    row.delay = sim::summarize_delays(res.delays);
    row.samples = static_cast<std::uint64_t>(std::count_if(
        kernel.trace().records().begin(), kernel.trace().records().end(),
        [](const sim::TraceRecord &r) { return r.kind == sim::TraceKind::Sample; }));
    if (controller)
        res.audits = controller->audits();
    res.trace = std::move(kernel.trace());
    return res;
}

std::vector<RunResult> run_sweep(const std::vector<Scenario> &scenarios, unsigned jobs, bool keep_traces)
{
    for (const auto &s : scenarios)
        s.validate();
    std::vector<RunResult> out(scenarios.size());
    std::vector<std::exception_ptr> errors(scenarios.size());
    BaselineCache cache;
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next++; i < scenarios.size(); i = next++) {
            try {
                out[i] = run_scenario(scenarios[i], &cache);
                if (!keep_traces)
                    out[i].trace = sim::EventTrace{};
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(scenarios.size())));
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < jobs; ++j)
        pool.emplace_back(worker);
    worker();
    for (auto &t : pool)
        t.join();
    for (auto &e : errors)
        if (e)
            std::rethrow_exception(e);
    return out;
}

} // namespace rosguard::exp
