// SPDX-License-Identifier: Apache-2.0
//
// tiltbf: joint antenna tilt adaptation and coordinated beamforming
// Copyright (C) 2026 The tiltbf authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "tiltbf/config.hpp"
#include "tiltbf/harness.hpp"
#include "tiltbf/validate.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <fstream>
#include <iomanip>
#include <iostream>

namespace
{

std::atomic<bool> g_stop{false};

extern "C" void on_sigint(int)
{
    g_stop.store(true);
}

constexpr int exit_config_error = 2;
constexpr int exit_diagnostics = 3;

tiltbf::ExperimentConfig resolve_config(const std::string &path, const std::string &preset)
{
    if (!path.empty())
        return tiltbf::load_config(path);
    if (preset == "paper")
        return tiltbf::paper_preset();
    if (preset.empty() || preset == "desk")
        return {};
    throw tiltbf::ConfigError("unknown preset '" + preset + "'.");
}

int cmd_run(const std::string &config_path, const std::string &preset, const std::string &out_path,
            const std::string &gain_path, bool quiet)
{
    const tiltbf::ExperimentConfig cfg = resolve_config(config_path, preset);
    cfg.validate();

    std::signal(SIGINT, on_sigint);
    tiltbf::ProgressFn progress;
    if (!quiet)
        progress = [](int done, int total) { std::cerr << "\rdrops " << done << '/' << total << std::flush; };
    const tiltbf::SweepResult res = tiltbf::run_sweep(cfg, &g_stop, progress);
    if (!quiet)
        std::cerr << '\n';

    if (out_path.empty() || out_path == "-")
        tiltbf::write_csv(std::cout, res.rows);
    else
    {
        std::ofstream os(out_path);
        tiltbf::write_csv(os, res.rows);
    }
    if (!gain_path.empty())
    {
        std::ofstream os(gain_path);
        tiltbf::write_gain_csv(os, res.gains);
    }
    if (res.interrupted)
        std::cerr << "interrupted: aggregated " << res.completed_drops << " completed drops\n";
    if (res.nonconverged_fraction() > cfg.max_nonconverged_fraction)
    {
        std::cerr << "inner solver did not converge in " << res.inner_nonconverged << " of " << res.inner_solves
                  << " solves\n";
        return exit_diagnostics;
    }
    return 0;
}

int cmd_drop(const std::string &config_path, const std::string &preset, int index, double p_dbm,
             const std::string &mode_name, bool dump)
{
    tiltbf::ExperimentConfig cfg = resolve_config(config_path, preset);
    cfg.validate();
    const auto mode = tiltbf::parse_mode(mode_name);
    if (!mode)
        throw tiltbf::ConfigError("unknown mode '" + mode_name + "'.");
    if (!(p_dbm >= 0.0 && p_dbm <= 60.0))
        throw tiltbf::ConfigError("p_max must lie in [0, 60] dBm.");

    const tiltbf::DropInstance inst = tiltbf::make_drop(cfg, index, cfg.network.users_per_cell);
    if (dump)
    {
        tiltbf::write_drop(std::cout, inst.drop);
        tiltbf::write_channel_set(std::cout, inst.channels);
    }
    const tiltbf::OuterResult r = tiltbf::solve_mode(cfg, inst, *mode, p_dbm, &std::cout);
    std::cout << std::setprecision(12) << "result ee " << r.solution.ee << " eta " << r.eta_final << " iterations " << r.iterations
              << " inner_solves " << r.inner_solves << " nonconverged " << r.inner_nonconverged
              << " tilt_evaluations " << r.tilt_evaluations << '\n';
    std::cout << "tilts";
    for (double t : r.solution.tilt_deg)
        std::cout << ' ' << t;
    std::cout << '\n';
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Joint antenna tilt and coordinated beamforming for network energy efficiency"};
    app.require_subcommand(1);

    std::string config_path, preset;
    auto add_config = [&](CLI::App *sub) {
        sub->add_option("-c,--config", config_path, "JSON config file (defaults apply to missing keys)");
        sub->add_option("--preset", preset, "Built-in profile: desk (default) or paper");
    };

    auto *run = app.add_subcommand("run", "Monte-Carlo power sweep, CSV to stdout or --out");
    add_config(run);
    std::string out_path, gain_path;
    bool quiet = false;
    run->add_option("-o,--out", out_path, "CSV output path");
    run->add_option("--gain-out", gain_path, "CSV of 3D-over-2D gain percentages");
    run->add_flag("-q,--quiet", quiet, "No progress on stderr");

    auto *drop = app.add_subcommand("drop", "Solve a single drop with iteration traces");
    add_config(drop);
    int index = 0;
    double p_dbm = 46.0;
    std::string mode = "3d_cluster";
    bool dump = false;
    drop->add_option("-i,--index", index, "Drop index")->check(CLI::NonNegativeNumber);
    drop->add_option("-p,--p-max", p_dbm, "Per-BS power budget in dBm");
    drop->add_option("-m,--mode", mode, "3d_cluster, 3d_exhaustive or 2d_baseline");
    drop->add_flag("--dump", dump, "Print the drop and channel records first");

    auto *validate = app.add_subcommand("validate", "Run the invariant and oracle checks");
    std::uint64_t seed = 1;
    validate->add_option("--seed", seed, "Fixture seed");

    auto *config = app.add_subcommand("config", "Inspect configuration");
    bool print_defaults = false;
    config->add_flag("--print-defaults", print_defaults, "Print the default config as JSON");
    config->add_option("--preset", preset, "Print a named preset instead");
    std::string check_path;
    config->add_option("--check", check_path, "Validate a config file");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_config_error;
    }

    try
    {
        if (*run)
            return cmd_run(config_path, preset, out_path, gain_path, quiet);
        if (*drop)
            return cmd_drop(config_path, preset, index, p_dbm, mode, dump);
        if (*validate)
            return tiltbf::run_validation(std::cout, seed) ? 0 : exit_diagnostics;
        if (*config)
        {
            if (!check_path.empty())
            {
                tiltbf::load_config(check_path);
                std::cout << "ok\n";
                return 0;
            }
            if (print_defaults || !preset.empty())
            {
                std::cout << tiltbf::config_to_json(resolve_config("", preset)) << '\n';
                return 0;
            }
            std::cout << config->help();
            return 0;
        }
    }
    catch (const tiltbf::ConfigError &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config_error;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
