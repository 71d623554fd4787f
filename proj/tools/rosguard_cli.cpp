// rosguard: run scenarios and preset experiments of the bandwidth-regulation
// simulator. Exit codes: 0 ok, 2 configuration error, 3 runtime error.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

#include "rosguard/expcli/config.hpp"
#include "rosguard/expcli/outputs.hpp"
#include "rosguard/expcli/presets.hpp"
#include "rosguard/expcli/runner.hpp"

namespace {

using namespace rosguard;

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

bool is_preset(const std::string &name)
{
    for (const auto &p : exp::preset_catalog())
        if (p.name == name)
            return true;
    return false;
}

std::vector<exp::Scenario> load_sweep(const std::string &what, std::optional<std::uint64_t> seed)
{
    std::vector<exp::Scenario> scenarios;
    if (is_preset(what)) {
        scenarios = exp::preset_experiments(what, seed.value_or(1));
    } else if (std::filesystem::exists(what)) {
        scenarios = exp::expand_sweep(exp::parse_config_file(what));
        if (seed)
            for (auto &s : scenarios)
                s.seed = *seed;
    } else {
        // Re-raises with the list of presets.
        exp::preset_experiments(what);
    }
    return scenarios;
}

void print_rows(const std::vector<exp::RunResult> &results)
{
    std::vector<exp::ResultRow> rows;
    for (const auto &r : results) {
        rows.push_back(r.row);
        if (!r.row.complete)
            std::cerr << fmt::format("warning: {} hit the duration cap; row is incomplete\n", r.row.scenario_id);
    }
    exp::write_summary(std::cout, rows);
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Memory-bandwidth regulation simulator"};
    app.require_subcommand(1);

    std::string config;
    std::string target;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    bool trace = false;
    bool plots = false;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());

    auto *run = app.add_subcommand("run", "run one scenario file");
    run->add_option("config", config, "scenario file")->required();
    run->add_flag("--trace", trace, "write trace.csv");
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--seed", seed, "override the scenario seed");

    auto *sweep = app.add_subcommand("sweep", "run a preset experiment or a config with a [sweep] section");
    sweep->add_option("preset_or_config", target, "preset name or scenario file")->required();
    sweep->add_option("--out", out_dir, "output directory");
    sweep->add_option("--seed", seed, "seed for every scenario");
    sweep->add_flag("--plots", plots, "write SVG charts next to summary.csv");
    sweep->add_flag("--trace", trace, "write traces/<scenario>.csv");
    sweep->add_option("--jobs", jobs, "parallel runs")->check(CLI::PositiveNumber);

    auto *presets = app.add_subcommand("presets", "list preset experiments");

    auto *validate = app.add_subcommand("validate", "check a scenario file");
    validate->add_option("config", config, "scenario file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*presets) {
            for (const auto &p : exp::preset_catalog())
                std::cout << fmt::format("{:<20} {}\n", p.name, p.description);
            return 0;
        }
        if (*validate) {
            const auto cfg = exp::parse_config_file(config);
            std::cout << fmt::format("ok: {} scenario(s)\n", exp::expand_sweep(cfg).size());
            return 0;
        }
        if (*run) {
            const auto cfg = exp::parse_config_file(config);
            if (!cfg.sweep.empty())
                throw exp::ConfigError("config has a [sweep] section; use the sweep subcommand");
            exp::Scenario s = cfg.scenario;
            if (seed)
                s.seed = *seed;
            std::vector<exp::RunResult> results;
            results.push_back(exp::run_scenario(s));
            exp::emit_outputs(out_dir, results, {false, false});
            if (trace) {
                std::ofstream f(std::filesystem::path(out_dir) / "trace.csv", std::ios::binary);
                if (!f)
                    throw std::runtime_error("cannot write trace.csv");
                results.front().trace.write_csv(f);
            }
            print_rows(results);
            return 0;
        }
        if (*sweep) {
            const auto scenarios = load_sweep(target, seed);
            const auto results = exp::run_sweep(scenarios, jobs, trace);
            exp::emit_outputs(out_dir, results, {trace, plots});
            print_rows(results);
            return 0;
        }
    } catch (const exp::ConfigError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return 0;
}
