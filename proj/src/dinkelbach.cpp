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

#include "tiltbf/dinkelbach.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace tiltbf
{

void OuterConfig::validate() const
{
    if (!(epsilon > 0.0) || !(delta > 0.0))
        throw std::invalid_argument("OuterConfig: epsilon and delta must be positive.");
    if (max_outer_iters < 1 || max_inner_iters < 1 || max_tilt_rounds < 0)
        throw std::invalid_argument("OuterConfig: iteration limits must be positive.");
    if (!(tilt.step_deg > 0.0) || tilt.step_deg >= 45.0)
        throw std::invalid_argument("OuterConfig: tilt step must lie in (0, 45) degrees.");
    if (tilt.threshold_deg && !(*tilt.threshold_deg > 0.0))
        throw std::invalid_argument("OuterConfig: clustering threshold must be positive.");
    if (max_restarts < 0)
        throw std::invalid_argument("OuterConfig: max_restarts must be non-negative.");
    if (!(zero_tol >= 0.0))
        throw std::invalid_argument("OuterConfig: zero tolerance must be non-negative.");
}

static Solution finish(const Problem &prob, const Eigen::MatrixXd &alpha, InnerState &&state,
                       std::vector<double> tilt_deg, double eta)
{
    Solution sol;
    sol.w = std::move(state.w);
    sol.u = std::move(state.u);
    sol.s = std::move(state.s);
    sol.tilt_deg = std::move(tilt_deg);
    sol.eta = eta;
    sol.ee = total_ee(prob.channels, alpha, sol.w, prob.power, prob.weights);
    return sol;
}

// Alternating inner solve and tilt rounds from a single starting point.
static EtaEvaluation ascend_from(double eta, const Problem &prob, const OuterConfig &cfg, const Solution &init)
{
    EtaEvaluation out;
    std::vector<double> tilts = init.tilt_deg;
    Eigen::MatrixXd alpha = prob.gains.gains(tilts);

    InnerOptions inner_opts;
    inner_opts.delta = cfg.delta;
    inner_opts.max_iters = cfg.max_inner_iters;
    inner_opts.trace = cfg.trace;

    Beamformers w = init.w;
    InnerState state;
    for (int round = 0;; ++round)
    {
        InnerResult inner = inner_solve(prob, alpha, eta, w, inner_opts);
        ++out.inner_solves;
        if (!inner.converged)
            ++out.inner_nonconverged;

        // Filters and slacks must match the final beamformers before a tilt round
        state = make_inner_state(prob, alpha, std::move(inner.state.w), eta);
        if (!prob.gains.has_tilt() || round >= cfg.max_tilt_rounds)
            break;

        const double g_before = state.g_current;
        const TiltRoundStats st = tilt_round(prob, state, alpha, tilts, eta, cfg.tilt);
        out.tilt_evaluations += st.evaluations;
        out.tilt_scans += st.scans;
        w = state.w;
        if (st.changed == 0 || state.g_current - g_before < cfg.delta)
            break;
    }

    out.f_value = state.g_current - eta * prob.static_power();
    out.solution = finish(prob, alpha, std::move(state), std::move(tilts), eta);
    return out;
}

// The ascent is local, so the cold start is always run as well and the better
// of the two is kept. A warm start can then never do worse than a cold one.
static EtaEvaluation two_start(double eta, const Problem &prob, const OuterConfig &cfg, const Solution &init,
                               const Solution &cold)
{
    if (!(eta >= 0.0))
        throw std::invalid_argument("f_eta: eta must be non-negative.");
    EtaEvaluation a = ascend_from(eta, prob, cfg, cold);
    EtaEvaluation b = ascend_from(eta, prob, cfg, init);
    EtaEvaluation &best = b.f_value > a.f_value ? b : a;
    const EtaEvaluation &other = b.f_value > a.f_value ? a : b;
    best.inner_solves += other.inner_solves;
    best.inner_nonconverged += other.inner_nonconverged;
    best.tilt_evaluations += other.tilt_evaluations;
    best.tilt_scans += other.tilt_scans;
    return std::move(best);
}

EtaEvaluation f_eta(double eta, const Problem &prob, const OuterConfig &cfg, const Solution &init)
{
    if (!(eta >= 0.0))
        throw std::invalid_argument("f_eta: eta must be non-negative.");
    return two_start(eta, prob, cfg, init, initial_solution(prob, cfg.tilt.step_deg));
}

Solution initial_solution(const Problem &prob, double tilt_step_deg)
{
    std::vector<double> tilts = initial_tilts(prob.gains, tilt_step_deg);
    const Eigen::MatrixXd alpha = prob.gains.gains(tilts);

    // Matched beamformers at the best of P, P / sqrt(10), ..., P / 10^6
    double best_ee = -1.0;
    Beamformers best;
    for (int k = 0; k <= 12; ++k)
    {
        Beamformers w = matched_beamformers(prob.channels, prob.power.p_max * std::pow(10.0, -0.5 * k));
        const double ee = total_ee(prob.channels, alpha, w, prob.power, prob.weights);
        if (ee > best_ee)
        {
            best_ee = ee;
            best = std::move(w);
        }
    }
    InnerState state = make_inner_state(prob, alpha, std::move(best), 0.0);
    return finish(prob, alpha, std::move(state), std::move(tilts), 0.0);
}

OuterResult outer_solve(const Problem &prob, const OuterConfig &cfg, const std::optional<Solution> &init)
{
    cfg.validate();
    prob.power.validate(prob.antennas(), prob.num_cells());
    prob.weights.validate(prob.num_cells() * prob.users_per_cell());

    OuterResult res;
    const Solution cold = initial_solution(prob, cfg.tilt.step_deg);
    Solution incumbent = init ? *init : cold;
    if (init)
        incumbent.ee = total_ee(prob.channels, prob.gains.gains(incumbent.tilt_deg), incumbent.w, prob.power,
                                prob.weights);
    res.initial_ee = incumbent.ee;

    const double peak = db_to_lin(prob.gains.pattern().g_max_db);
    const double static_power = prob.static_power();
    res.eta_upper_init = prob.weights.b.maxCoeff() * r_max(prob.channels, prob.power.p_max, peak) / static_power;
    // F is only approximated by a local ascent, so a late incumbent can prove
    // an earlier "F <= 0" wrong (its EE exceeds eta_max). The bisection is then
    // rerun from the full interval with that incumbent as the warm start.
    for (;; ++res.restarts)
    {
        res.eta_min = 0.0;
        res.eta_max = res.eta_upper_init;
        res.iterations = 0;
        while (res.eta_max - res.eta_min >= cfg.epsilon && res.iterations < cfg.max_outer_iters)
        {
            const double eta = 0.5 * (res.eta_min + res.eta_max);
            EtaEvaluation ev = two_start(eta, prob, cfg, incumbent, cold);
            ++res.iterations;
            res.inner_solves += ev.inner_solves;
            res.inner_nonconverged += ev.inner_nonconverged;
            res.tilt_evaluations += ev.tilt_evaluations;
            res.tilt_scans += ev.tilt_scans;

            const double f2 = prob.power.xi * transmit_power(ev.solution.w) + static_power;
            if (ev.f_value > cfg.zero_tol * f2)
                res.eta_min = eta;
            else
                res.eta_max = eta;
            if (cfg.trace)
                *cfg.trace << "outer " << res.eta_min << ' ' << res.eta_max << ' ' << ev.f_value << '\n';

            if (ev.solution.ee > incumbent.ee)
                incumbent = std::move(ev.solution);
        }
        if (incumbent.ee <= res.eta_max || res.restarts >= cfg.max_restarts)
            break;
        if (cfg.trace)
            *cfg.trace << "restart " << incumbent.ee << '\n';
    }

    res.eta_final = 0.5 * (res.eta_min + res.eta_max);
    res.solution = std::move(incumbent);
    res.solution.eta = res.eta_final;
    return res;
}

} // namespace tiltbf
