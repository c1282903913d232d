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

#include "tiltbf/tiltsearch.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tiltbf
{

std::vector<Cluster> cluster_users(std::span<const double> aoas_deg, double threshold_deg)
{
    if (aoas_deg.empty())
        throw std::invalid_argument("cluster_users: at least one user required.");
    if (!(threshold_deg > 0.0))
        throw std::invalid_argument("cluster_users: threshold must be positive.");

    std::vector<int> order(aoas_deg.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return aoas_deg[a] < aoas_deg[b]; });

    std::vector<Cluster> clusters;
    for (int idx : order)
    {
        const double a = aoas_deg[idx];
        if (clusters.empty() || a - clusters.back().span_max_deg >= threshold_deg)
            clusters.push_back({{}, a, a});
        clusters.back().members.push_back(idx);
        clusters.back().span_max_deg = a;
    }
    return clusters;
}

int chosen_user(std::span<const double> aoas_deg, const TiltObjective &eval)
{
    if (aoas_deg.empty())
        throw std::invalid_argument("chosen_user: at least one user required.");
    int best = 0;
    double best_value = eval(aoas_deg[0]);
    for (size_t k = 1; k < aoas_deg.size(); ++k)
    {
        const double v = eval(aoas_deg[k]);
        if (v > best_value)
        {
            best_value = v;
            best = static_cast<int>(k);
        }
    }
    return best;
}

std::vector<double> lattice_grid(double lo_deg, double hi_deg, double step_deg)
{
    if (!(step_deg > 0.0))
        throw std::invalid_argument("lattice_grid: step must be positive.");
    const long k_lo = static_cast<long>(std::ceil(lo_deg / step_deg - 1e-9));
    const long k_hi = static_cast<long>(std::floor(hi_deg / step_deg + 1e-9));
    std::vector<double> grid;
    for (long k = k_lo; k <= k_hi; ++k)
        grid.push_back(static_cast<double>(k) * step_deg);
    if (grid.empty())
        grid.push_back(std::round(0.5 * (lo_deg + hi_deg) / step_deg) * step_deg);
    return grid;
}

static ScanResult scan_points(const std::vector<double> &grid, const TiltObjective &eval)
{
    ScanResult best;
    for (double t : grid)
    {
        const double v = eval(t);
        if (best.evaluations == 0 || v > best.value)
        {
            best.value = v;
            best.tilt_deg = t;
        }
        ++best.evaluations;
    }
    return best;
}

ScanResult greedy_tilt_scan(const Cluster &cluster, double step_deg, double halfwidth_deg,
                            const TiltObjective &eval)
{
    if (!(step_deg > 0.0))
        throw std::invalid_argument("greedy_tilt_scan: step must be positive.");
    const double lo = std::max(step_deg, cluster.span_min_deg - halfwidth_deg);
    const double hi = std::min(90.0 - step_deg, cluster.span_max_deg + halfwidth_deg);
    auto grid = lattice_grid(lo, hi, step_deg);
    for (auto &t : grid)
        t = std::clamp(t, step_deg, 90.0 - step_deg);
    return scan_points(grid, eval);
}

ScanResult exhaustive_tilt_scan(double lo_deg, double hi_deg, double step_deg, const TiltObjective &eval)
{
    if (!(lo_deg < hi_deg) || !(step_deg > 0.0))
        throw std::invalid_argument("exhaustive_tilt_scan: requires lo < hi and step > 0.");
    std::vector<double> grid;
    const long n = static_cast<long>(std::floor((hi_deg - lo_deg) / step_deg + 1e-9));
    for (long k = 0; k <= n; ++k)
        grid.push_back(lo_deg + static_cast<double>(k) * step_deg);
    if (hi_deg - grid.back() > 1e-9 * step_deg)
        grid.push_back(hi_deg);
    return scan_points(grid, eval);
}

std::vector<double> initial_tilts(const GainModel &gains, double step_deg)
{
    std::vector<double> tilts;
    if (!gains.has_tilt())
        return tilts;
    for (int j = 0; j < gains.num_cells(); ++j)
    {
        const auto aoas = gains.serving_aoas_deg(j);
        const double mean = std::accumulate(aoas.begin(), aoas.end(), 0.0) / static_cast<double>(aoas.size());
        const double snapped = std::round(mean / step_deg) * step_deg;
        tilts.push_back(std::clamp(snapped, step_deg, 90.0 - step_deg));
    }
    return tilts;
}

TiltRoundStats tilt_round(const Problem &prob, InnerState &state, Eigen::MatrixXd &alpha,
                          std::vector<double> &tilt_deg, double eta, const TiltSearchOptions &opts,
                          double lambda_tol)
{
    TiltRoundStats stats;
    const GainModel &gains = prob.gains;
    if (!gains.has_tilt())
        return stats;

    const double halfwidth = concavity_halfwidth_deg(gains.pattern());
    const double threshold = opts.threshold_deg.value_or(2.0 * halfwidth);

    for (int j = 0; j < prob.num_cells(); ++j)
    {
        Eigen::MatrixXd alpha_t = alpha;
        InnerOptions sweep_opts;
        sweep_opts.lambda_tol = lambda_tol;
        // Candidate point at tilt t: BS j re-solved against the current filters
        // and slacks, then optionally a few full sweeps.
        auto candidate = [&](double t) {
            gains.update_bs(alpha_t, j, t);
            Beamformers w_t = state.w;
            w_t[j] = solve_beamformers_bs(j, prob, alpha_t, state.u, state.s, eta, lambda_tol).w;
            InnerState st = make_inner_state(prob, alpha_t, std::move(w_t), eta);
            for (int n = 0; n < opts.eval_sweeps; ++n)
                st = inner_iterate(st, prob, alpha_t, eta, sweep_opts);
            return st;
        };
        auto eval = [&](double t) {
            ++stats.evaluations;
            return candidate(t).g_current;
        };

        ScanResult best;
        if (opts.strategy == TiltStrategy::exhaustive)
            best = exhaustive_tilt_scan(opts.step_deg, 90.0 - opts.step_deg, opts.step_deg, eval);
        else
        {
            const auto aoas = gains.serving_aoas_deg(j);
            const auto clusters = cluster_users(aoas, threshold);
            const int chosen = chosen_user(aoas, eval);
            bool first = true;
            for (const auto &c : clusters)
            {
                const bool has_chosen = std::find(c.members.begin(), c.members.end(), chosen) != c.members.end();
                if (!opts.scan_all_clusters && !has_chosen)
                    continue;
                const ScanResult r = greedy_tilt_scan(c, opts.step_deg, halfwidth, eval);
                if (first || r.value > best.value)
                    best = r;
                first = false;
            }
        }
        ++stats.scans;

        // Compare against the re-solve at the current tilt, so the extra BS update
        // inside every candidate never masquerades as a tilt gain.
        const double here = eval(tilt_deg[j]);
        const double accept = here + 1e-12 * std::max(1.0, std::abs(here));
        if (best.value > accept && best.tilt_deg != tilt_deg[j])
        {
            tilt_deg[j] = best.tilt_deg;
            state = candidate(best.tilt_deg);
            gains.update_bs(alpha, j, best.tilt_deg);
            ++stats.changed;
        }
    }
    return stats;
}

} // namespace tiltbf
