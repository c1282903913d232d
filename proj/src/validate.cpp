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

#include "tiltbf/validate.hpp"

#include "tiltbf/harness.hpp"
#include "tiltbf/tiltsearch.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <string>

namespace tiltbf
{

namespace
{

Beamformers random_beamformers(const ChannelSet &ch, double p_max, std::mt19937_64 &rng)
{
    std::normal_distribution<double> n(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.05, 1.0);
    Beamformers w(ch.num_cells);
    for (auto &wj : w)
    {
        wj.resize(ch.antennas, ch.users_per_cell);
        for (Eigen::Index k = 0; k < wj.size(); ++k)
            wj.data()[k] = {n(rng), n(rng)};
        wj *= std::sqrt(u(rng) * p_max) / wj.norm();
    }
    return w;
}

std::string num(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

} // namespace

bool run_validation(std::ostream &os, std::uint64_t seed)
{
    bool all = true;
    auto report = [&](const std::string &name, bool ok, const std::string &detail) {
        os << (ok ? "PASS " : "FAIL ") << name << ": " << detail << '\n';
        all = all && ok;
    };

    ExperimentConfig cfg;
    cfg.base_seed = seed;
    const DropInstance inst = make_drop(cfg, 0, cfg.network.users_per_cell);
    const GainModel gains(cfg.pattern, PatternMode::full_3d, inst.drop, inst.layout);
    const Problem prob{inst.channels, gains, cfg.power_model(40.0), cfg.weights_for(inst.channels.num_users())};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    // Surrogate equals G at MMSE filters and matched slacks
    double worst = 0.0;
    for (int t = 0; t < 100; ++t)
    {
        std::vector<double> tilts(3);
        for (double &x : tilts)
            x = 1.0 + 30.0 * unif(rng);
        const Eigen::MatrixXd alpha = gains.gains(tilts);
        const Beamformers w = random_beamformers(inst.channels, prob.power.p_max, rng);
        const double eta = unif(rng);
        const Eigen::VectorXcd u = update_filters(inst.channels, alpha, w);
        const Eigen::VectorXd s = update_slacks(inst.channels, alpha, w, u);
        const double h = h_value(inst.channels, alpha, w, u, s, eta, prob.power, prob.weights);
        const double g = g_value(inst.channels, alpha, w, eta, prob.power, prob.weights);
        worst = std::max(worst, std::abs(h - g) / std::max(1.0, std::abs(g)));
    }
    report("surrogate_identity", worst <= 1e-9, "max relative gap " + num(worst));

    // Block updates never decrease the surrogate; power stays feasible
    const std::vector<double> tilts = initial_tilts(gains, cfg.outer.tilt.step_deg);
    const Eigen::MatrixXd alpha = gains.gains(tilts);
    double prev = -INFINITY, drop_max = 0.0;
    const BlockObserver obs = [&](std::string_view, int, double h) {
        if (std::isfinite(prev))
            drop_max = std::max(drop_max, (prev - h) / std::max(1.0, std::abs(prev)));
        prev = h;
    };
    InnerOptions opts;
    opts.max_iters = cfg.outer.max_inner_iters;
    const InnerResult inner =
        inner_solve(prob, alpha, 0.5, random_beamformers(inst.channels, prob.power.p_max, rng), opts, &obs);
    report("monotone_ascent", drop_max <= 1e-9, "largest relative decrease " + num(drop_max));
    double over = 0.0;
    for (int j = 0; j < prob.num_cells(); ++j)
        over = std::max(over, bs_power(inner.state.w, j) / prob.power.p_max - 1.0);
    report("power_budget", over <= 1e-9, "largest relative excess " + num(over));

    // Outer bisection lands on the root and never returns worse than its start
    const OuterResult outer = outer_solve(prob, cfg.outer);
    const double gap = std::abs(outer.solution.ee - outer.eta_final);
    report("dinkelbach_root", gap <= 2.0 * cfg.outer.epsilon && outer.solution.ee >= outer.initial_ee,
           "|EE - eta| = " + num(gap) + ", EE " + num(outer.solution.ee) + " vs start " +
               num(outer.initial_ee));

    // Clustered scans use a subset of the exhaustive grid
    const double hw = concavity_halfwidth_deg(cfg.pattern);
    bool contained = true;
    for (int t = 0; t < 50; ++t)
    {
        const double a = 60.0 * unif(rng), w = 10.0 * unif(rng), ph = 6.3 * unif(rng);
        auto f = [&](double x) { return std::sin(0.4 * x + ph) - 1e-3 * (x - a) * (x - a); };
        const ScanResult g = greedy_tilt_scan(Cluster{{0}, a, a + w}, 0.1, hw, f);
        const ScanResult e = exhaustive_tilt_scan(0.1, 89.9, 0.1, f);
        contained = contained && g.value <= e.value + 1e-12;
    }
    report("scan_containment", contained, "50 random objectives");

    os << (all ? "validate: all checks passed" : "validate: some checks failed") << '\n';
    return all;
}

} // namespace tiltbf
