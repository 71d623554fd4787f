// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <CLI11.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>

#include "rosguard/controller/controller_node.hpp"
#include "rosguard/expcli/outputs.hpp"
#include "rosguard/expcli/presets.hpp"
#include "rosguard/expcli/runner.hpp"
#include "rosguard/memmodel/memory_system.hpp"
#include "rosguard/nodemodel/nrt_node.hpp"
#include "rosguard/nodemodel/rt_node.hpp"
#include "rosguard/nodemodel/state_machine.hpp"
#include "trace_checks.hpp"

using namespace rosguard;
using boost::multiprecision::cpp_rational;
using metrics::RegulationPolicy;
using metrics::SamplingScheme;
using node::Command;
using node::NodeState;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string &why)
    {
        if (pass)
            detail = why;
        pass = false;
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---------------------------------------------------------------- criterion 1

cpp_rational oracle_bw(std::int64_t accesses, std::int64_t cycles, const metrics::PlatformParams &p)
{
    return cpp_rational(p.cache_line_bytes) * p.freq_hz * accesses / (cpp_rational(cycles) * kBytesPerMb);
}

Outcome criterion1()
{
    Outcome o;
    const metrics::PlatformParams p{};
    struct Ex {
        std::int64_t accesses;
        std::int64_t cycles;
    };
    const Ex examples[] = {{16384, 2'201'000'000}, {16384, 2'201'000}, {430'436, 2'201'000}};
    std::string values;
    for (const auto &e : examples) {
        metrics::PmuDelta d;
        d.cycles = e.cycles;
        d.l2_refills = e.accesses;
        const double got = metrics::bandwidth_mb_s(d, p).value;
        const double want = static_cast<double>(oracle_bw(e.accesses, e.cycles, p));
        const double rel = std::abs(got - want) / want;
        values += fmt::format("{:.12g} ", got);
        if (rel > 1e-12)
            o.fail(fmt::format("{} accesses: {} vs oracle {} (rel {:.3g})", e.accesses, got, want, rel));
        const auto exact = metrics::bandwidth_exact(d, p);
        if (cpp_rational(static_cast<long long>(exact.num), static_cast<long long>(exact.den)) !=
            oracle_bw(e.accesses, e.cycles, p))
            o.fail(fmt::format("{} accesses: exact ratio differs from the oracle", e.accesses));
    }

    // Inversion of the reference average over a 1 ms window.
    const cpp_rational target("2627174/100");
    const cpp_rational lines = target * 2'201'000 * kBytesPerMb / (cpp_rational(64) * p.freq_hz);
    const boost::multiprecision::cpp_int num = numerator(lines), den = denominator(lines);
    const std::int64_t inv = static_cast<std::int64_t>((2 * num + den) / (2 * den)); // nearest integer
    const cpp_rational err_bytes = abs(cpp_rational(inv) - lines) * 64;
    if (inv != 430'436)
        o.fail(fmt::format("inversion gave {} accesses", inv));
    if (err_bytes > 64)
        o.fail("inversion misses by more than one cache line");
    metrics::PmuDelta d;
    d.cycles = 2'201'000;
    d.l2_refills = inv;
    const double back = metrics::bandwidth_mb_s(d, p).value;
    if (std::floor(back * 10) != 262717)
        o.fail(fmt::format("round trip gave {}", back));
    if (o.pass)
        o.detail = fmt::format("values {}; inversion {} accesses, {:.3f} B off, back to {:.4f} MB/s", values, inv,
                               static_cast<double>(err_bytes), back);
    return o;
}

// ---------------------------------------------------------------- criterion 2

Outcome criterion2()
{
    Outcome o;
    const auto t0 = Clock::now();
    const auto scenarios = exp::preset_experiments("sampling-overhead");
    const auto results = exp::run_sweep(scenarios, 4, false);
    std::string list;
    double prev = 1e9;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const TimeUs p = scenarios[i].regulation.sampling_period_us;
        const double s = results[i].row.nrt_slowdown;
        const double model = 1.0 + 59.0 / static_cast<double>(p);
        list += fmt::format("P{}={:.5f} ", p, s);
        if (!results[i].row.complete)
            o.fail(fmt::format("P={} did not complete", p));
        if (results[i].row.throttle_count != 0)
            o.fail(fmt::format("P={} was throttled", p));
        // The only mismatch allowed is the unfinished last period.
        if (std::abs(s - model) > std::max(0.002, 0.02 * (model - 1.0)))
            o.fail(fmt::format("P={} slowdown {:.5f} vs 1+59/P = {:.5f}", p, s, model));
        if (!(s < prev))
            o.fail(fmt::format("slowdown not decreasing at P={}", p));
        prev = s;
        if (p == 1000 && std::abs(s - 1.059) > 0.002)
            o.fail(fmt::format("slowdown at 1 kHz is {:.5f}", s));
    }
    if (seconds_since(t0) > 10)
        o.fail(fmt::format("took {:.1f} s", seconds_since(t0)));
    if (o.pass)
        o.detail = list;
    return o;
}

// ---------------------------------------------------------------- criterion 3

TimeUs spread(const sim::Latency &l)
{
    return l.max_us - l.min_us;
}

Outcome criterion3()
{
    Outcome o;
    const auto t0 = Clock::now();
    const auto scenarios = exp::preset_experiments("activation-delay");
    const auto results = exp::run_sweep(scenarios, 4, false);

    // (period) -> delays in episode order, per scheme
    std::map<TimeUs, std::vector<TimeUs>> self, ext;
    TimeUs self_bound = 0, ext_bound = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto &s = scenarios[i];
        const auto &tm = s.transport;
        const TimeUs up = spread(tm.hop(sim::EndpointKind::Nrt, sim::EndpointKind::Controller));
        const TimeUs down = spread(tm.hop(sim::EndpointKind::Controller, sim::EndpointKind::Nrt));
        const bool is_self = s.regulation.scheme == SamplingScheme::SelfSampling;
        auto &bucket = (is_self ? self : ext)[s.regulation.sampling_period_us];
        if (is_self)
            self_bound = std::max(self_bound, up + down);
        else
            ext_bound = std::max(ext_bound, down);
        for (const auto &e : results[i].delays)
            bucket.push_back(e.delay_us());
        if (bucket.empty())
            o.fail(fmt::format("{}: no throttle episode", s.id));
    }

    auto check_family = [&](const std::map<TimeUs, std::vector<TimeUs>> &fam, TimeUs limit, TimeUs bound,
                            const char *name) {
        TimeUs lo = kForever, hi = 0;
        for (const auto &[p, ds] : fam)
            for (TimeUs d : ds) {
                lo = std::min(lo, d);
                hi = std::max(hi, d);
                if (d > limit)
                    o.fail(fmt::format("{} delay {} us at P={} exceeds {}", name, d, p, limit));
            }
        if (hi - lo > bound)
            o.fail(fmt::format("{} delays spread {}..{} beyond jitter bound {}", name, lo, hi, bound));
        return std::pair{lo, hi};
    };
    const auto [slo, shi] = check_family(self, 200, self_bound, "self");
    const auto [elo, ehi] = check_family(ext, 100, ext_bound, "external");

    std::size_t matched = 0;
    for (const auto &[p, ds] : self) {
        const auto &es = ext[p];
        for (std::size_t k = 0; k < std::min(ds.size(), es.size()); ++k, ++matched)
            if (!(es[k] < ds[k]))
                o.fail(fmt::format("P={} episode {}: external {} not below self {}", p, k, es[k], ds[k]));
    }
    if (matched == 0)
        o.fail("no matched episodes");
    if (seconds_since(t0) > 10)
        o.fail(fmt::format("took {:.1f} s", seconds_since(t0)));
    if (o.pass)
        o.detail = fmt::format("self {}..{} us, external {}..{} us, {} matched pairs, bounds {}/{}", slo, shi, elo,
                               ehi, matched, self_bound, ext_bound);
    return o;
}

// ---------------------------------------------------------------- criterion 4

std::string replay_all(const sim::EventTrace &trace, TimeUs min_latency)
{
    for (auto *check : {&testing::check_no_work_while_throttled, &testing::check_throttle_protocol,
                        &testing::check_commands_inside_enable, &testing::check_priority_safety}) {
        std::string err = check(trace);
        if (!err.empty())
            return err;
    }
    return testing::check_transport_causality(trace, min_latency);
}

NodeState table(NodeState s, Command c)
{
    using enum NodeState;
    using enum Command;
    if (c == TurnOff)
        return Off;
    if (s == Off)
        return c == TurnOn ? On : Off;
    if (s == On)
        return c == Throttle ? Thr : On;
    return c == Replenish ? On : Thr;
}

exp::Scenario random_scenario(std::mt19937_64 &rng, int k)
{
    const auto names = workloads::preset_names();
    auto pick = [&](const auto &v) { return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)]; };
    exp::Scenario s = exp::base_scenario(std::string(pick(names)), std::string(pick(names)), rng());
    s.id = fmt::format("random-{}", k);
    s.preset_duration_us = std::uniform_int_distribution<TimeUs>(3000, 15000)(rng);
    if (rng() % 3 == 0) {
        s.nrt.push_back({"nrt2", std::string(pick(names)), 2});
        s.controller_core = 3;
    }
    const std::vector<TimeUs> periods{100, 200, 500, 1000, 2000};
    s.regulation.sampling_period_us = pick(periods);
    s.regulation.regulation_period_us = s.regulation.sampling_period_us * std::uniform_int_distribution<int>(1, 6)(rng);
    s.regulation.threshold_ratio = std::uniform_real_distribution<double>(0.02, 0.6)(rng);
    s.regulation.policy = rng() % 2 ? RegulationPolicy::IntervalBased : RegulationPolicy::Monolithic;
    s.regulation.scheme = rng() % 2 ? SamplingScheme::SelfSampling : SamplingScheme::ExternalSampling;
    if (rng() % 2) {
        const TimeUs lo = std::uniform_int_distribution<TimeUs>(5, 60)(rng);
        s.transport.default_latency = {lo, lo + std::uniform_int_distribution<TimeUs>(0, 30)(rng)};
    }
    if (rng() % 4 == 0)
        s.rt.lifecycle.pattern = node::Periodic{s.preset_duration_us * 3, 2};
    return s;
}

Outcome criterion4()
{
    Outcome o;
    const auto t0 = Clock::now();

    for (NodeState s : node::kAllStates)
        for (Command c : node::kAllCommands)
            if (node::apply_command(s, c) != table(s, c))
                o.fail(fmt::format("table: {} x {}", node::to_string(s), node::to_string(c)));

    // Randomized command sequences against the table and the dispatch actions.
    std::mt19937_64 rng(2024);
    for (int c = 0; c < 10000 && o.pass; ++c) {
        NodeState s = NodeState::Off;
        const auto scheme = c % 2 ? SamplingScheme::SelfSampling : SamplingScheme::ExternalSampling;
        for (int i = 0; i < 40; ++i) {
            const Command cmd = node::kAllCommands[rng() % 4];
            const auto r = node::cfb_dispatch(cmd, s, scheme);
            const NodeState want = table(s, cmd);
            if (r.state != want || r.changed != (want != s) || (!r.changed && !r.actions.empty())) {
                o.fail(fmt::format("dispatch {} in {}", node::to_string(cmd), node::to_string(s)));
                break;
            }
            const auto act = node::active_callbacks(want, scheme);
            const bool works = std::find(act.begin(), act.end(), node::CallbackName::NCT) != act.end();
            if (works != (want == NodeState::On || want == NodeState::Off)) {
                o.fail(fmt::format("NCT eligibility in {}", node::to_string(want)));
                break;
            }
            s = want;
        }
    }

    // Randomized sample/boundary/signal streams through the control logic.
    std::uniform_int_distribution<Bytes> bytes(0, kBytesPerMb / 2);
    for (int c = 0; c < 10000 && o.pass; ++c) {
        metrics::RegulationConfig cfg;
        cfg.sampling_period_us = 1000;
        cfg.regulation_period_us = 5000;
        cfg.threshold_ratio = 0.5;
        cfg.reference_total_mb = 4.0;
        cfg.policy = c % 2 ? RegulationPolicy::IntervalBased : RegulationPolicy::Monolithic;
        std::vector<ctrl::RegulatedNode> nodes;
        for (int i = 1 + static_cast<int>(rng() % 3); i > 0; --i)
            nodes.push_back({"n" + std::to_string(i), i});
        ctrl::RegulationLogic logic(cfg, 10'000, nodes);
        std::map<std::string, int> per_interval;
        std::map<std::string, bool> open;
        for (int step = 0; step < 60 && o.pass; ++step) {
            const int op = static_cast<int>(rng() % 100);
            ctrl::LogicOutput out;
            if (op < 5)
                out = logic.on_rt_enable();
            else if (op < 8)
                out = logic.on_rt_disable();
            else if (op < 20)
                out = logic.on_interval_boundary();
            else
                out = logic.on_sample(nodes[static_cast<std::size_t>(op) % nodes.size()].core, bytes(rng));
            if (op < 20)
                per_interval.clear();
            for (const auto &cmd : out.commands) {
                if (cmd.command == Command::Throttle) {
                    if (open[cmd.node] || ++per_interval[cmd.node] > 1)
                        o.fail(fmt::format("case {}: extra Throttle to {}", c, cmd.node));
                    open[cmd.node] = true;
                } else if (cmd.command == Command::Replenish) {
                    if (!open[cmd.node])
                        o.fail(fmt::format("case {}: Replenish without Throttle", c));
                    open[cmd.node] = false;
                } else if (cmd.command == Command::TurnOff) {
                    open[cmd.node] = false;
                }
            }
        }
    }

    // Trace replay over the preset runs and randomized full simulations.
    std::vector<exp::Scenario> scenarios = exp::preset_experiments("threshold-sweep", 3);
    for (auto &s : exp::preset_experiments("combination-matrix", 3))
        scenarios.push_back(std::move(s));
    std::mt19937_64 srng(99);
    for (int k = 0; k < 300; ++k)
        scenarios.push_back(random_scenario(srng, k));
    const auto results = exp::run_sweep(scenarios, 4, true);
    std::uint64_t throttles = 0;
    for (std::size_t i = 0; i < results.size() && o.pass; ++i) {
        const TimeUs min_lat = scenarios[i].transport.default_latency.min_us;
        const std::string err = replay_all(results[i].trace, min_lat);
        if (!err.empty())
            o.fail(fmt::format("{}: {}", scenarios[i].id, err));
        throttles += results[i].row.throttle_count;
    }
    if (seconds_since(t0) > 30)
        o.fail(fmt::format("took {:.1f} s", seconds_since(t0)));
    if (o.pass)
        o.detail = fmt::format("12 pairs, 2x10^4 random sequences, {} traces replayed ({} throttles), {:.1f} s",
                               results.size(), throttles, seconds_since(t0));
    return o;
}

// ---------------------------------------------------------------- criterion 5

Outcome criterion5()
{
    Outcome o;
    std::mt19937_64 rng(55);
    std::uniform_int_distribution<Bytes> sample(0, 4 * kBytesPerMb);
    for (int c = 0; c < 10000 && o.pass; ++c) {
        metrics::BudgetLedger l;
        l.interval_budget = sample(rng) * 2;
        Bytes acc = 0;
        int crossings = 0;
        for (int i = 0; i < 30; ++i) {
            if (rng() % 8 == 0) {
                l = metrics::ledger_replenish(l);
                acc = 0;
                crossings = 0;
                continue;
            }
            const Bytes b = sample(rng);
            const auto r = metrics::ledger_consume(l, b);
            acc += b;
            crossings += r.exceeded_now;
            l = r.ledger;
            if (l.consumed != acc || crossings > 1 || r.exceeded_now != (acc > l.interval_budget && acc - b <= l.interval_budget)) {
                o.fail(fmt::format("ledger case {} diverges from the accumulator", c));
                break;
            }
        }
    }

    const auto scenarios = exp::preset_experiments("threshold-sweep");
    const auto results = exp::run_sweep(scenarios, 4, true);
    std::size_t audits = 0;
    double worst = 0.0; // largest actual / bound
    for (std::size_t i = 0; i < results.size() && o.pass; ++i) {
        const auto &s = scenarios[i];
        const auto &r = results[i];
        TimeUs max_window = 0;
        for (const auto &rec : r.trace.records())
            if (rec.kind == sim::TraceKind::Sample)
                max_window = std::max<TimeUs>(max_window, std::stoll(testing::detail_of(rec, "t1")) -
                                                              std::stoll(testing::detail_of(rec, "t0")));
        TimeUs max_delay = s.regulation.scheme == SamplingScheme::SelfSampling ? 118 : 74;
        for (const auto &e : r.delays)
            max_delay = std::max(max_delay, e.delay_us());
        for (const auto &a : r.audits) {
            const auto &w = s.nrt.at(0).workload;
            const memmodel::RateBps demand = memmodel::mb_s_to_bps(s.resolve(w).peak_demand_mb_s());
            const Bytes slack = static_cast<Bytes>((static_cast<Int128>(demand) * (max_window + max_delay) +
                                                    kUsPerSecond - 1) / kUsPerSecond) +
                                s.platform.cache_line_bytes;
            const Bytes bound = a.budget + slack;
            ++audits;
            worst = std::max(worst, static_cast<double>(a.actual) / static_cast<double>(bound));
            if (a.actual > bound)
                o.fail(fmt::format("{} interval {}: actual {} > budget {} + slack {}", s.id, a.interval_index,
                                   a.actual, a.budget, slack));
        }
    }
    if (audits == 0)
        o.fail("no audited intervals");
    if (o.pass)
        o.detail = fmt::format("10^4 ledger cases exact; {} audited intervals, worst actual/bound {:.3f}", audits, worst);
    return o;
}

// ---------------------------------------------------------------- criterion 6

Outcome criterion6()
{
    Outcome o;
    std::mt19937_64 rng(606);
    const std::vector<std::string> rts{"mser", "bandwidth_read", "bandwidth_write", "disparity"};
    const auto names = workloads::preset_names();
    int checked = 0;
    std::uint64_t throttles = 0;
    for (int k = 0; k < 8; ++k) {
        exp::Scenario s = exp::base_scenario(rts[rng() % rts.size()], std::string(names[rng() % names.size()]), rng());
        s.preset_duration_us = std::uniform_int_distribution<TimeUs>(5000, 20000)(rng);
        const TimeUs iso = workloads::isolation_time(s.resolve(s.rt.workload));
        s.rt_window_estimate_us = iso * std::uniform_int_distribution<TimeUs>(3, 5)(rng);
        s.regulation.sampling_period_us = std::vector<TimeUs>{200, 500, 1000}[rng() % 3];
        s.regulation.threshold_ratio = std::uniform_real_distribution<double>(0.05, 0.4)(rng);
        s.regulation.scheme = rng() % 2 ? SamplingScheme::SelfSampling : SamplingScheme::ExternalSampling;
        // Make the reference volume bind: scale it to the RT's own traffic.
        s.regulation.reference_total_mb = std::max(1.0, metrics::bytes_to_mb(s.resolve(s.rt.workload).total_bytes()));

        exp::Scenario ib = s, mono = s;
        ib.regulation.policy = RegulationPolicy::IntervalBased;
        ib.regulation.regulation_period_us = s.rt_window_estimate_us;
        mono.regulation.policy = RegulationPolicy::Monolithic;
        mono.regulation.regulation_period_us = s.rt_window_estimate_us;
        const auto a = exp::run_scenario(ib);
        const auto b = exp::run_scenario(mono);
        if (a.rt_response_us >= s.rt_window_estimate_us)
            o.fail(fmt::format("case {}: rt ran past its window", k));
        if (a.trace.to_csv() != b.trace.to_csv())
            o.fail(fmt::format("case {} ({} vs {}): traces differ", k, s.rt.workload, s.nrt[0].workload));
        throttles += a.row.throttle_count;
        ++checked;
    }
    if (o.pass)
        o.detail = fmt::format("{} randomized scenarios byte-identical ({} throttles in total)", checked, throttles);
    return o;
}

// ---------------------------------------------------------------- criterion 7

Outcome criterion7()
{
    Outcome o;
    const auto t0 = Clock::now();
    const auto scenarios = exp::preset_experiments("threshold-sweep");
    const auto results = exp::run_sweep(scenarios, 4, false);
    // workload -> policy -> ratio -> (rt, nrt)
    std::map<std::string, std::map<std::string, std::map<double, std::pair<double, double>>>> grid;
    for (const auto &r : results)
        grid[r.row.rt_workload][r.row.policy][r.row.threshold_ratio] = {r.row.rt_slowdown, r.row.nrt_slowdown};

    std::string summary;
    for (const auto &[w, per_policy] : grid) {
        for (const auto &[policy, pts] : per_policy) {
            double prev_rt = 0.0, prev_nrt = 1e9;
            for (const auto &[ratio, v] : pts) {
                const auto [rt, nrt] = v;
                if (nrt > prev_nrt + 1e-9)
                    o.fail(fmt::format("{} {}: nrt slowdown rises at {:.2f}", w, policy, ratio));
                if (rt + 1e-9 < prev_rt)
                    o.fail(fmt::format("{} {}: rt slowdown falls at {:.2f}", w, policy, ratio));
                if (ratio <= 0.10 + 1e-9 && rt > 1.02)
                    o.fail(fmt::format("{} {}: rt slowdown {:.4f} at threshold {:.2f}", w, policy, rt, ratio));
                prev_rt = rt;
                prev_nrt = nrt;
            }
            summary += fmt::format("{}/{} rt {:.4f}..{:.4f} nrt {:.3f}..{:.3f}; ", w, policy, pts.begin()->second.first,
                                   pts.rbegin()->second.first, pts.begin()->second.second,
                                   pts.rbegin()->second.second);
        }
        const auto &ib = per_policy.at("interval");
        const auto &mono = per_policy.at("monolithic");
        for (const auto &[ratio, v] : ib)
            if (v.second > mono.at(ratio).second + 1e-9)
                o.fail(fmt::format("{}: interval nrt {:.4f} above monolithic {:.4f} at {:.2f}", w, v.second,
                                   mono.at(ratio).second, ratio));
    }
    if (seconds_since(t0) > 60)
        o.fail(fmt::format("took {:.1f} s", seconds_since(t0)));
    o.detail = o.pass ? summary : o.detail + " | " + summary;
    return o;
}

// ---------------------------------------------------------------- criterion 8

std::map<std::string, std::string> read_tree(const std::filesystem::path &dir)
{
    std::map<std::string, std::string> files;
    for (const auto &e : std::filesystem::recursive_directory_iterator(dir)) {
        if (!e.is_regular_file())
            continue;
        std::ifstream f(e.path(), std::ios::binary);
        std::ostringstream ss;
        ss << f.rdbuf();
        files[std::filesystem::relative(e.path(), dir).string()] = ss.str();
    }
    return files;
}

Outcome criterion8()
{
    Outcome o;
    const auto base = std::filesystem::temp_directory_path() / "rosguard_acceptance_determinism";
    std::filesystem::remove_all(base);
    std::vector<std::map<std::string, std::string>> trees;
    for (unsigned jobs : {1u, 4u}) {
        const auto dir = base / fmt::format("run{}", jobs);
        exp::emit_outputs(dir, exp::run_sweep(exp::preset_experiments("threshold-sweep", 7), jobs, true),
                          {true, false});
        trees.push_back(read_tree(dir));
    }
    std::filesystem::remove_all(base);
    if (trees[0].count("summary.csv") == 0)
        o.fail("no summary.csv");
    if (trees[0] != trees[1])
        o.fail("outputs differ between runs");
    if (o.pass)
        o.detail = fmt::format("{} files byte-identical across two runs", trees[0].size());
    return o;
}

// ---------------------------------------------------------------- criterion 9

Outcome criterion9()
{
    Outcome o;
    const metrics::PlatformParams p{};
    std::mt19937_64 rng(909);
    std::uniform_int_distribution<TimeUs> dt(1, 3000);
    std::uniform_real_distribution<double> share(0.2, 1.5);
    for (int c = 0; c < 10000 && o.pass; ++c) {
        memmodel::MemorySystem m(p, 2);
        TimeUs total = 0;
        for (int seg = 0; seg < 5; ++seg) {
            // Keep the pair saturated: first core fixed share, second fills the rest and more.
            const double a = share(rng) * p.capacity_mb_s;
            const double b = std::max(1.0, p.capacity_mb_s - a) + share(rng) * p.capacity_mb_s;
            m.set_demand(0, memmodel::mb_s_to_bps(a));
            m.set_demand(1, memmodel::mb_s_to_bps(b));
            if (!m.saturated()) {
                o.fail("pair not saturated");
                break;
            }
            const TimeUs d = dt(rng);
            m.advance(d);
            total += d;
            const Int128 expected = static_cast<Int128>(m.capacity()) * total / kUsPerSecond;
            if (static_cast<Int128>(m.bytes(0) + m.bytes(1)) != expected) {
                o.fail(fmt::format("case {}: sum {} != capacity volume {}", c, m.bytes(0) + m.bytes(1),
                                   static_cast<std::int64_t>(expected)));
                break;
            }
        }
    }

    // Throttling the aggressor hands the RT core its full demand.
    sim::Kernel kernel(p, 3);
    sim::Transport transport(kernel, sim::TransportModel{});
    const auto rt_prof = workloads::preset("bandwidth_read", 30'000);
    node::RtNode rt(kernel, transport, "rt", 0, rt_prof, node::RtLifecycle{node::OneShot{}, 30'000, 0});
    node::NrtNode nrt(kernel, transport, "nrt1", 1, workloads::preset("bandwidth_read", 30'000),
                      SamplingScheme::SelfSampling, 1000);
    metrics::RegulationConfig cfg;
    cfg.threshold_ratio = 0.2;
    cfg.reference_total_mb = metrics::bytes_to_mb(rt_prof.total_bytes());
    ctrl::ControllerNode controller(kernel, transport, "controller", 2, cfg, 30'000, {{"nrt1", 1}});
    rt.start();
    nrt.start(0);
    kernel.run_until(10'000'000);

    std::optional<TimeUs> thr;
    for (const auto &r : kernel.trace().records())
        if (r.kind == sim::TraceKind::CbStart && r.node == "nrt1" && r.callback == "THR") {
            thr = r.t_us;
            break;
        }
    const auto &mem = kernel.memory();
    const memmodel::RateBps demand = memmodel::mb_s_to_bps(rt_prof.peak_demand_mb_s());
    constexpr TimeUs kWin = 20;
    if (!thr) {
        o.fail("no throttle happened");
    } else if (!rt.activations().at(0).done_us || *rt.activations().at(0).done_us < *thr + kWin) {
        o.fail("rt finished before the throttle");
    } else {
        const Bytes after = mem.bytes_at(0, *thr + kWin) - mem.bytes_at(0, *thr);
        const Bytes before = mem.bytes_at(0, *thr) - mem.bytes_at(0, *thr - kWin);
        const Bytes full = demand * kWin / kUsPerSecond;
        if (std::llabs(after - full) > 1)
            o.fail(fmt::format("rt moved {} bytes in {} us after the throttle, demand allows {}", after, kWin, full));
        if (!(before < full))
            o.fail("rt already ran at full demand before the throttle");
        if (o.pass)
            o.detail = fmt::format("10^4 saturated runs exact; at THR start t={} rt rate {} -> {} bytes per {} us "
                                   "(demand {})",
                                   *thr, before, after, kWin, full);
    }
    return o;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"rosguard acceptance criteria"};
    int only = 0;
    app.add_option("--only", only, "run a single criterion (1-9)")->check(CLI::Range(0, 9));
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                         criterion6, criterion7, criterion8, criterion9};
    bool all = true;
    for (int i = 1; i <= 9; ++i) {
        if (only != 0 && only != i)
            continue;
        Outcome o;
        try {
            o = criteria[static_cast<std::size_t>(i - 1)]();
        } catch (const std::exception &e) {
            o.fail(fmt::format("exception: {}", e.what()));
        }
        fmt::print("criterion {}: {} - {}\n", i, o.pass ? "PASS" : "FAIL", o.detail);
        std::fflush(stdout);
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
