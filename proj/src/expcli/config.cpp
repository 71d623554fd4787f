#include "rosguard/expcli/config.hpp"

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace rosguard::exp {

namespace pt = boost::property_tree;

namespace {

struct Field {
    std::string where; // "section.key" for messages
    std::string value;
};

std::int64_t to_int(const Field &f)
{
    std::int64_t v = 0;
    const std::string s = boost::trim_copy(f.value);
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty())
        throw ConfigError(fmt::format("{}: expected an integer, got '{}'", f.where, f.value));
    return v;
}

double to_double(const Field &f)
{
    const std::string s = boost::trim_copy(f.value);
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size())
            return v;
    } catch (const std::exception &) {
    }
    throw ConfigError(fmt::format("{}: expected a number, got '{}'", f.where, f.value));
}

bool to_bool(const Field &f)
{
    const std::string s = boost::to_lower_copy(boost::trim_copy(f.value));
    if (s == "true" || s == "yes" || s == "on" || s == "1")
        return true;
    if (s == "false" || s == "no" || s == "off" || s == "0")
        return false;
    throw ConfigError(fmt::format("{}: expected a boolean, got '{}'", f.where, f.value));
}

metrics::RegulationPolicy to_policy(const Field &f)
{
    const std::string s = boost::to_lower_copy(boost::trim_copy(f.value));
    if (s == "interval" || s == "interval_based")
        return metrics::RegulationPolicy::IntervalBased;
    if (s == "monolithic")
        return metrics::RegulationPolicy::Monolithic;
    throw ConfigError(fmt::format("{}: expected interval or monolithic, got '{}'", f.where, f.value));
}

metrics::SamplingScheme to_scheme(const Field &f)
{
    const std::string s = boost::to_lower_copy(boost::trim_copy(f.value));
    if (s == "self")
        return metrics::SamplingScheme::SelfSampling;
    if (s == "external")
        return metrics::SamplingScheme::ExternalSampling;
    throw ConfigError(fmt::format("{}: expected self or external, got '{}'", f.where, f.value));
}

template <class T, class Conv>
std::vector<T> to_list(const Field &f, Conv conv)
{
    std::vector<std::string> parts;
    boost::split(parts, f.value, boost::is_any_of(", \t"), boost::token_compress_on);
    std::vector<T> out;
    for (const auto &p : parts)
        if (!p.empty())
            out.push_back(conv(Field{f.where, p}));
    if (out.empty())
        throw ConfigError(fmt::format("{}: empty list", f.where));
    return out;
}

std::optional<sim::EndpointKind> endpoint(std::string_view s)
{
    if (s == "rt")
        return sim::EndpointKind::Rt;
    if (s == "nrt")
        return sim::EndpointKind::Nrt;
    if (s == "controller")
        return sim::EndpointKind::Controller;
    return std::nullopt;
}

/// Walks one section, handing each key to `fn`; `fn` returns false for keys
/// it does not know.
template <class Fn>
void each_key(const std::string &section, const pt::ptree &tree, Fn fn)
{
    for (const auto &[key, child] : tree) {
        if (!child.empty())
            throw ConfigError(fmt::format("{}.{}: nested values are not allowed", section, key));
        Field f{section + "." + key, child.data()};
        if (!fn(key, f))
            throw ConfigError(fmt::format("unknown key '{}' in section [{}]", key, section));
    }
}

void parse_scenario(Scenario &s, const pt::ptree &t)
{
    each_key("scenario", t, [&](const std::string &k, const Field &f) {
        if (k == "id")
            s.id = boost::trim_copy(f.value);
        else if (k == "seed")
            s.seed = static_cast<std::uint64_t>(to_int(f));
        else if (k == "duration_us")
            s.duration_us = to_int(f);
        else if (k == "controller_core")
            s.controller_core = static_cast<CoreId>(to_int(f));
        else if (k == "rt_window_estimate_us")
            s.rt_window_estimate_us = to_int(f);
        else if (k == "preset_duration_us")
            s.preset_duration_us = to_int(f);
        else
            return false;
        return true;
    });
    if (s.id.empty() || s.id.find_first_of(",/\\\n ") != std::string::npos)
        throw ConfigError("scenario.id must be non-empty without spaces, commas or slashes");
}

void parse_platform(Scenario &s, const pt::ptree &t)
{
    each_key("platform", t, [&](const std::string &k, const Field &f) {
        if (k == "freq_hz")
            s.platform.freq_hz = to_int(f);
        else if (k == "cache_line_bytes")
            s.platform.cache_line_bytes = to_int(f);
        else if (k == "capacity_mb_s")
            s.platform.capacity_mb_s = to_double(f);
        else if (k == "writeback_fraction")
            s.writeback_fraction = to_double(f);
        else
            return false;
        return true;
    });
}

void parse_regulation(Scenario &s, const pt::ptree &t)
{
    each_key("regulation", t, [&](const std::string &k, const Field &f) {
        auto &r = s.regulation;
        if (k == "enabled")
            s.regulation_enabled = to_bool(f);
        else if (k == "sampling_period_us")
            r.sampling_period_us = to_int(f);
        else if (k == "regulation_period_us")
            r.regulation_period_us = to_int(f);
        else if (k == "threshold_ratio")
            r.threshold_ratio = to_double(f);
        else if (k == "reference_total_mb")
            r.reference_total_mb = to_double(f);
        else if (k == "policy")
            r.policy = to_policy(f);
        else if (k == "scheme")
            r.scheme = to_scheme(f);
        else
            return false;
        return true;
    });
}

void parse_transport(Scenario &s, const pt::ptree &t)
{
    each_key("transport", t, [&](const std::string &k, const Field &f) {
        auto &m = s.transport;
        if (k == "latency_us") {
            m.default_latency.min_us = m.default_latency.max_us = to_int(f);
        } else if (k == "latency_min_us") {
            m.default_latency.min_us = to_int(f);
        } else if (k == "latency_max_us") {
            m.default_latency.max_us = to_int(f);
        } else if (k == "publisher_busy") {
            m.publisher_busy = to_bool(f);
        } else {
            // <from>_<to>_min_us / <from>_<to>_max_us
            std::vector<std::string> parts;
            boost::split(parts, k, boost::is_any_of("_"));
            if (parts.size() != 4 || parts[3] != "us" || (parts[2] != "min" && parts[2] != "max"))
                return false;
            auto from = endpoint(parts[0]);
            auto to = endpoint(parts[1]);
            if (!from || !to)
                return false;
            auto [it, _] = m.per_hop.try_emplace({*from, *to}, m.default_latency);
            (parts[2] == "min" ? it->second.min_us : it->second.max_us) = to_int(f);
        }
        return true;
    });
}

void parse_costs(Scenario &s, const pt::ptree &t)
{
    each_key("costs", t, [&](const std::string &k, const Field &f) {
        if (k == "cfb_us")
            s.timing.cfb_cost_us = to_int(f);
        else if (k == "pmc_us")
            s.timing.pmc_cost_us = to_int(f);
        else if (k == "pmc_timer") {
            const std::string v = boost::trim_copy(f.value);
            if (v == "fixed_delay")
                s.timing.timer_mode = node::PmcTimerMode::FixedDelay;
            else if (v == "fixed_rate")
                s.timing.timer_mode = node::PmcTimerMode::FixedRate;
            else
                throw ConfigError(fmt::format("{}: expected fixed_delay or fixed_rate, got '{}'", f.where, f.value));
        } else if (k == "controller_sample_us")
            s.controller_costs.on_sample_us = to_int(f);
        else if (k == "controller_signal_us")
            s.controller_costs.on_signal_us = to_int(f);
        else if (k == "controller_boundary_us")
            s.controller_costs.on_boundary_us = to_int(f);
        else if (k == "poll_read_us")
            s.controller_costs.poll_read_us = to_int(f);
        else
            return false;
        return true;
    });
}

void parse_rt(Scenario &s, const pt::ptree &t)
{
    std::string pattern = "oneshot";
    node::Periodic periodic{};
    each_key("rt", t, [&](const std::string &k, const Field &f) {
        if (k == "name")
            s.rt.name = boost::trim_copy(f.value);
        else if (k == "workload")
            s.rt.workload = boost::trim_copy(f.value);
        else if (k == "core")
            s.rt.core = static_cast<CoreId>(to_int(f));
        else if (k == "priority")
            s.rt.priority = static_cast<int>(to_int(f));
        else if (k == "pattern")
            pattern = boost::to_lower_copy(boost::trim_copy(f.value));
        else if (k == "period_us")
            periodic.period_us = to_int(f);
        else if (k == "activations")
            periodic.activations = static_cast<int>(to_int(f));
        else if (k == "start_us")
            s.rt.lifecycle.start_us = to_int(f);
        else if (k == "window_us")
            s.rt.lifecycle.rt_window_us = to_int(f);
        else
            return false;
        return true;
    });
    if (pattern == "oneshot")
        s.rt.lifecycle.pattern = node::OneShot{};
    else if (pattern == "periodic")
        s.rt.lifecycle.pattern = periodic;
    else
        throw ConfigError(fmt::format("rt.pattern: expected oneshot or periodic, got '{}'", pattern));
}

NrtSpec parse_nrt(const std::string &name, const pt::ptree &t)
{
    NrtSpec n{name, "", -1};
    each_key("nrt." + name, t, [&](const std::string &k, const Field &f) {
        if (k == "workload")
            n.workload = boost::trim_copy(f.value);
        else if (k == "core")
            n.core = static_cast<CoreId>(to_int(f));
        else
            return false;
        return true;
    });
    if (n.workload.empty())
        throw ConfigError(fmt::format("nrt.{}.workload is required", name));
    if (n.core < 0)
        throw ConfigError(fmt::format("nrt.{}.core is required and must be >= 0", name));
    return n;
}

workloads::WorkloadProfile parse_workload(const std::string &name, const pt::ptree &t)
{
    std::map<int, workloads::Phase> phases;
    const std::string section = "workloads." + name;
    each_key(section, t, [&](const std::string &k, const Field &f) {
        // phaseN.<field>
        const auto dot = k.find('.');
        if (dot == std::string::npos || k.rfind("phase", 0) != 0)
            return false;
        const Field idx{f.where, k.substr(5, dot - 5)};
        const auto n = to_int(idx);
        if (n < 1)
            throw ConfigError(fmt::format("{}: phase numbers start at 1", f.where));
        auto &p = phases[static_cast<int>(n)];
        const std::string field = k.substr(dot + 1);
        if (field == "memory_bytes")
            p.memory_bytes = to_int(f);
        else if (field == "demand_mb_s")
            p.demand_mb_s = to_double(f);
        else if (field == "compute_us")
            p.compute_us = to_int(f);
        else
            return false;
        return true;
    });
    workloads::WorkloadProfile w{name, {}};
    int expect = 1;
    for (const auto &[n, p] : phases) {
        if (n != expect++)
            throw ConfigError(fmt::format("{}: phases must be numbered 1..N without gaps", section));
        w.phases.push_back(p);
    }
    try {
        w.validate();
    } catch (const std::exception &e) {
        throw ConfigError(fmt::format("{}: {}", section, e.what()));
    }
    return w;
}

void parse_sweep(SweepAxes &a, const pt::ptree &t)
{
    each_key("sweep", t, [&](const std::string &k, const Field &f) {
        if (k == "threshold_ratios")
            a.threshold_ratios = to_list<double>(f, to_double);
        else if (k == "sampling_periods_us")
            a.sampling_periods_us = to_list<TimeUs>(f, to_int);
        else if (k == "regulation_periods_us")
            a.regulation_periods_us = to_list<TimeUs>(f, to_int);
        else if (k == "policies")
            a.policies = to_list<metrics::RegulationPolicy>(f, to_policy);
        else if (k == "schemes")
            a.schemes = to_list<metrics::SamplingScheme>(f, to_scheme);
        else
            return false;
        return true;
    });
}

} // namespace

bool SweepAxes::empty() const
{
    return threshold_ratios.empty() && sampling_periods_us.empty() && regulation_periods_us.empty() &&
           policies.empty() && schemes.empty();
}

ConfigFile parse_config_string(std::string_view text)
{
    pt::ptree tree;
    try {
        std::istringstream is{std::string(text)};
        pt::ini_parser::read_ini(is, tree);
    } catch (const pt::ini_parser_error &e) {
        throw ConfigError(fmt::format("config syntax: {} (line {})", e.message(), e.line()));
    }

    ConfigFile cfg;
    Scenario &s = cfg.scenario;
    std::vector<NrtSpec> nrt;
    for (const auto &[section, child] : tree) {
        if (child.empty() && !child.data().empty())
            throw ConfigError(fmt::format("key '{}' outside of any section", section));
        if (section == "scenario")
            parse_scenario(s, child);
        else if (section == "platform")
            parse_platform(s, child);
        else if (section == "regulation")
            parse_regulation(s, child);
        else if (section == "transport")
            parse_transport(s, child);
        else if (section == "costs")
            parse_costs(s, child);
        else if (section == "rt")
            parse_rt(s, child);
        else if (section == "sweep")
            parse_sweep(cfg.sweep, child);
        else if (section.rfind("nrt.", 0) == 0 && section.size() > 4)
            nrt.push_back(parse_nrt(section.substr(4), child));
        else if (section.rfind("workloads.", 0) == 0 && section.size() > 10)
            s.workloads[section.substr(10)] = parse_workload(section.substr(10), child);
        else
            throw ConfigError(fmt::format("unknown section [{}]", section));
    }
    if (!nrt.empty())
        s.nrt = std::move(nrt);
    s.validate();
    for (auto p : cfg.sweep.sampling_periods_us)
        if (p <= 0)
            throw ConfigError("sweep.sampling_periods_us: periods must be > 0");
    return cfg;
}

ConfigFile parse_config_file(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError(fmt::format("cannot open config '{}'", path.string()));
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_string(ss.str());
}

std::vector<Scenario> expand_sweep(const ConfigFile &cfg)
{
    const Scenario &base = cfg.scenario;
    if (cfg.sweep.empty())
        return {base};
    const SweepAxes &a = cfg.sweep;
    auto or_base = [](auto v, auto dflt) { return v.empty() ? decltype(v){dflt} : v; };
    const auto ratios = or_base(a.threshold_ratios, base.regulation.threshold_ratio);
    const auto samplings = or_base(a.sampling_periods_us, base.regulation.sampling_period_us);
    const auto regs = or_base(a.regulation_periods_us, base.regulation.regulation_period_us);
    const auto policies = or_base(a.policies, base.regulation.policy);
    const auto schemes = or_base(a.schemes, base.regulation.scheme);

    std::vector<Scenario> out;
    for (auto pol : policies)
        for (auto sch : schemes)
            for (auto ps : samplings)
                for (auto pr : regs)
                    for (double r : ratios) {
                        Scenario s = base;
                        s.regulation.policy = pol;
                        s.regulation.scheme = sch;
                        s.regulation.sampling_period_us = ps;
                        s.regulation.regulation_period_us = pr;
                        s.regulation.threshold_ratio = r;
                        s.id = fmt::format("{}-{:03}", base.id, out.size());
                        s.validate();
                        out.push_back(std::move(s));
                    }
    return out;
}

} // namespace rosguard::exp
