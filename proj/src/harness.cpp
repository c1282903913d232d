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

#include "tiltbf/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <thread>

namespace tiltbf
{

DropInstance make_drop(const ExperimentConfig &cfg, int drop_index, int users_per_cell)
{
    NetworkConfig net = cfg.network;
    net.users_per_cell = users_per_cell;
    const std::uint64_t seed = derive_seed(cfg.base_seed, {static_cast<std::uint64_t>(drop_index)});
    DropInstance inst;
    inst.layout = build_layout(net);
    inst.drop = drop_users(net, inst.layout, derive_seed(seed, {0}));
    inst.channels = build_channel_set(inst.drop, net, cfg.fading, derive_seed(seed, {1}));
    return inst;
}

OuterResult solve_mode(const ExperimentConfig &cfg, const DropInstance &inst, Mode mode, double p_max_dbm,
                       std::ostream *trace, const Solution *cluster_solution)
{
    // The exhaustive oracle refines the clustering result, so it can never
    // report less than clustering on the same drop.
    std::optional<Solution> init;
    if (mode == Mode::exhaustive_3d)
        init = cluster_solution ? *cluster_solution
                                : solve_mode(cfg, inst, Mode::cluster_3d, p_max_dbm).solution;

    const PatternMode pm = mode == Mode::baseline_2d ? PatternMode::azimuth_only : PatternMode::full_3d;
    const GainModel gains(cfg.pattern, pm, inst.drop, inst.layout);
    const Problem prob{inst.channels, gains, cfg.power_model(p_max_dbm),
                       cfg.weights_for(inst.channels.num_users())};
    OuterConfig outer = cfg.outer;
    outer.tilt.strategy = mode == Mode::exhaustive_3d ? TiltStrategy::exhaustive : TiltStrategy::cluster;
    outer.trace = trace;
    return outer_solve(prob, outer, init);
}

OuterResult solve_2d_baseline(const ExperimentConfig &cfg, const DropInstance &inst, double p_max_dbm)
{
    return solve_mode(cfg, inst, Mode::baseline_2d, p_max_dbm);
}

std::vector<DropRecord> run_drop(const ExperimentConfig &cfg, int drop_index, std::span<const double> p_max_dbm,
                                 int users_per_cell)
{
    const DropInstance inst = make_drop(cfg, drop_index, users_per_cell);
    std::vector<DropRecord> out;
    for (double p : p_max_dbm)
    {
        std::optional<Solution> cluster;
        for (Mode mode : cfg.modes)
        {
            const OuterResult r = solve_mode(cfg, inst, mode, p, nullptr, cluster ? &*cluster : nullptr);
            if (mode == Mode::cluster_3d)
                cluster = r.solution;
            const PatternMode pm = mode == Mode::baseline_2d ? PatternMode::azimuth_only : PatternMode::full_3d;
            const GainModel gains(cfg.pattern, pm, inst.drop, inst.layout);
            const Eigen::MatrixXd alpha = gains.gains(r.solution.tilt_deg);

            DropRecord rec;
            rec.mode = mode;
            rec.p_max_dbm = p;
            rec.users_per_cell = users_per_cell;
            rec.ee = r.solution.ee;
            rec.sumrate_nats = weighted_sum_rate(inst.channels, alpha, r.solution.w,
                                                 cfg.weights_for(inst.channels.num_users()));
            rec.power_used = transmit_power(r.solution.w) / inst.channels.num_cells;
            rec.outer_iters = r.iterations;
            rec.inner_solves = r.inner_solves;
            rec.inner_nonconverged = r.inner_nonconverged;
            rec.tilt_evaluations = r.tilt_evaluations;
            rec.tilt_deg = r.solution.tilt_deg;
            out.push_back(std::move(rec));
        }
    }
    return out;
}

std::pair<double, double> mean_stderr(std::span<const double> x)
{
    if (x.empty())
        return {0.0, 0.0};
    double mean = 0.0;
    for (double v : x)
        mean += v;
    mean /= static_cast<double>(x.size());
    if (x.size() < 2)
        return {mean, 0.0};
    double ss = 0.0;
    for (double v : x)
        ss += (v - mean) * (v - mean);
    const double n = static_cast<double>(x.size());
    return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

SweepResult run_sweep(const ExperimentConfig &cfg, const std::atomic<bool> *stop, const ProgressFn &progress)
{
    cfg.validate();
    const std::vector<int> ks = cfg.k_values();
    const int jobs = static_cast<int>(ks.size()) * cfg.num_drops;

    std::vector<std::vector<DropRecord>> records(jobs);
    std::vector<double> seconds(jobs, 0.0);
    std::vector<char> done(jobs, 0);
    std::atomic<int> next{0};
    std::atomic<int> finished{0};
    std::mutex progress_mutex;

    auto worker = [&] {
        for (;;)
        {
            if (stop && stop->load())
                return;
            const int job = next.fetch_add(1);
            if (job >= jobs)
                return;
            const int k = ks[job / cfg.num_drops];
            const int drop = job % cfg.num_drops;
            const auto t0 = std::chrono::steady_clock::now();
            records[job] = run_drop(cfg, drop, cfg.p_max_dbm, k);
            seconds[job] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            done[job] = 1;
            const int n = ++finished;
            if (progress)
            {
                std::lock_guard lock(progress_mutex);
                progress(n, jobs);
            }
        }
    };

    int threads = cfg.workers > 0 ? cfg.workers : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::clamp(threads, 1, std::max(1, jobs));
    if (threads == 1)
        worker();
    else
    {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back(worker);
        for (auto &t : pool)
            t.join();
    }

    SweepResult res;
    res.interrupted = finished.load() < jobs;
    for (size_t ki = 0; ki < ks.size(); ++ki)
    {
        const int K = ks[ki];
        for (double p : cfg.p_max_dbm)
        {
            std::map<Mode, std::vector<double>> ee_by_mode;
            for (Mode mode : cfg.modes)
            {
                SweepRow row;
                row.p_max_dbm = p;
                row.mode = mode;
                row.users_per_cell = K;
                row.antennas = cfg.network.antennas;
                row.num_cells = cfg.network.num_cells;
                std::vector<double> ee;
                double rate = 0.0, power = 0.0, iters = 0.0, evals = 0.0;
                for (int d = 0; d < cfg.num_drops; ++d)
                {
                    const int job = static_cast<int>(ki) * cfg.num_drops + d;
                    if (!done[job])
                        continue;
                    for (const auto &rec : records[job])
                        if (rec.mode == mode && rec.p_max_dbm == p)
                        {
                            ee.push_back(rec.ee);
                            rate += rec.sumrate_nats;
                            power += rec.power_used;
                            iters += rec.outer_iters;
                            evals += rec.tilt_evaluations;
                        }
                    row.wall_time_s += seconds[job] / static_cast<double>(cfg.p_max_dbm.size() * cfg.modes.size());
                }
                row.drops = static_cast<int>(ee.size());
                if (row.drops > 0)
                {
                    std::tie(row.mean_ee, row.stderr_ee) = mean_stderr(ee);
                    row.mean_sumrate_nats = rate / row.drops;
                    row.mean_power_used = power / row.drops;
                    row.mean_outer_iters = iters / row.drops;
                    row.mean_tilt_evaluations = evals / row.drops;
                }
                ee_by_mode[mode] = std::move(ee);
                res.rows.push_back(row);
            }
            if (ee_by_mode.count(Mode::cluster_3d) && ee_by_mode.count(Mode::baseline_2d))
            {
                const auto &a = ee_by_mode[Mode::cluster_3d];
                const auto &b = ee_by_mode[Mode::baseline_2d];
                GainRow g;
                g.p_max_dbm = p;
                g.users_per_cell = K;
                g.drops = static_cast<int>(a.size());
                std::vector<double> diff(a.size());
                for (size_t i = 0; i < a.size(); ++i)
                    diff[i] = a[i] - b[i];
                std::tie(g.mean_paired_diff, g.stderr_paired_diff) = mean_stderr(diff);
                const double mb = mean_stderr(b).first;
                g.gain_percent = mb > 0.0 ? 100.0 * (mean_stderr(a).first - mb) / mb : 0.0;
                res.gains.push_back(g);
            }
        }
    }
    for (int job = 0; job < jobs; ++job)
        if (done[job])
        {
            ++res.completed_drops;
            for (const auto &rec : records[job])
            {
                res.inner_solves += rec.inner_solves;
                res.inner_nonconverged += rec.inner_nonconverged;
            }
            res.records.push_back(std::move(records[job]));
        }
    return res;
}

static std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

void write_csv(std::ostream &os, const std::vector<SweepRow> &rows)
{
    os << csv_header << '\n';
    for (const auto &r : rows)
        os << fmt(r.p_max_dbm) << ',' << mode_name(r.mode) << ',' << r.users_per_cell << ',' << r.antennas << ','
           << r.num_cells << ',' << fmt(r.mean_ee) << ',' << fmt(r.stderr_ee) << ',' << fmt(r.mean_sumrate_nats)
           << ',' << fmt(r.mean_power_used) << ',' << fmt(r.mean_outer_iters) << ',' << r.drops << '\n';
}

void write_gain_csv(std::ostream &os, const std::vector<GainRow> &rows)
{
    os << "p_max_dbm,K,gain_percent,mean_paired_diff,stderr_paired_diff,drops\n";
    for (const auto &r : rows)
        os << fmt(r.p_max_dbm) << ',' << r.users_per_cell << ',' << fmt(r.gain_percent) << ','
           << fmt(r.mean_paired_diff) << ',' << fmt(r.stderr_paired_diff) << ',' << r.drops << '\n';
}

} // namespace tiltbf
