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

#include "tiltbf/wmmse.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace tiltbf
{

Eigen::VectorXcd update_filters(const ChannelSet &ch, const Eigen::MatrixXd &alpha, const Beamformers &w)
{
    const Eigen::MatrixXd rx = received_powers(ch, alpha, w);
    const int U = ch.num_users(), K = ch.users_per_cell;
    Eigen::VectorXcd u(U);
    for (int k = 0; k < U; ++k)
    {
        const int j = k / K, m = k % K;
        const cdouble amp = ch.link(j, k).dot(w[j].col(m)) * std::sqrt(alpha(j, k));
        u[k] = amp / (rx.row(k).sum() + 1.0);
    }
    return u;
}

Eigen::VectorXd update_slacks(const ChannelSet &ch, const Eigen::MatrixXd &alpha, const Beamformers &w,
                              const Eigen::VectorXcd &u)
{
    return mse_all(ch, alpha, w, u).cwiseInverse();
}

double lambda_search(const std::function<double(double)> &power_of, double p_max, double tol)
{
    if (power_of(0.0) <= p_max)
        return 0.0;

    double lo = 0.0, hi = 1.0;
    double p_hi = power_of(hi);
    for (int k = 0; p_hi > p_max && k < 2100; ++k)
    {
        lo = hi;
        hi *= 2.0;
        p_hi = power_of(hi);
    }
    if (p_hi > p_max)
        throw std::runtime_error("lambda_search: failed to bracket the multiplier.");

    for (int k = 0; k < 400 && p_max - p_hi > tol * p_max; ++k)
    {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi || hi - lo < 1e-12 * std::max(1.0, hi))
            break;
        const double p = power_of(mid);
        if (p > p_max)
            lo = mid;
        else
        {
            hi = mid;
            p_hi = p;
        }
    }
    return hi;
}

BsBeamformers solve_beamformers_bs(int bs, const Problem &prob, const Eigen::MatrixXd &alpha,
                                   const Eigen::VectorXcd &u, const Eigen::VectorXd &s, double eta,
                                   double lambda_tol)
{
    const ChannelSet &ch = prob.channels;
    const int M = ch.antennas, K = ch.users_per_cell, U = ch.num_users();
    if ((s.array() <= 0.0).any())
        throw std::domain_error("solve_beamformers_bs: slacks must be positive.");

    const double reg = eta * prob.power.xi;
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(M, M) * (reg > 0.0 ? reg : 1e-12);
    for (int k = 0; k < U; ++k)
    {
        const double c = prob.weights.b[k] * s[k] * std::norm(u[k]) * alpha(bs, k);
        if (c != 0.0)
            A.noalias() += c * (ch.link(bs, k) * ch.link(bs, k).adjoint());
    }

    Eigen::MatrixXcd rhs(M, K);
    for (int m = 0; m < K; ++m)
    {
        const int k = ch.user_index(bs, m);
        rhs.col(m) = (prob.weights.b[k] * s[k] * u[k] * std::sqrt(alpha(bs, k))) * ch.link(bs, k);
    }

    // A is Hermitian positive definite: diagonalize once, then every multiplier
    // costs O(M K).
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A);
    const Eigen::VectorXd ev = es.eigenvalues();
    const Eigen::MatrixXcd d = es.eigenvectors().adjoint() * rhs;
    const Eigen::VectorXd d2 = d.cwiseAbs2().rowwise().sum();

    auto power_of = [&](double lambda) {
        double p = 0.0;
        for (int k = 0; k < M; ++k)
        {
            const double den = std::max(ev[k] + lambda, std::numeric_limits<double>::min());
            p += d2[k] / (den * den);
        }
        return p;
    };

    BsBeamformers out;
    out.lambda = lambda_search(power_of, prob.power.p_max, lambda_tol);
    const Eigen::VectorXd scale = (ev.array() + out.lambda).cwiseMax(std::numeric_limits<double>::min()).inverse();
    out.w = es.eigenvectors() * (scale.asDiagonal() * d);
    out.power = out.w.squaredNorm();
    if (out.power > prob.power.p_max)
    {
        // Rounding in the back-substitution; the multiplier already sits on the
        // feasible side so this only trims the last bits.
        out.w *= std::sqrt(prob.power.p_max / out.power);
        out.power = out.w.squaredNorm();
    }
    return out;
}

Beamformers matched_beamformers(const ChannelSet &ch, double p_max)
{
    const int L = ch.num_cells, K = ch.users_per_cell;
    Beamformers w(static_cast<size_t>(L), Eigen::MatrixXcd(ch.antennas, K));
    const double amp = std::sqrt(p_max / K);
    for (int j = 0; j < L; ++j)
        for (int m = 0; m < K; ++m)
        {
            const auto g = ch.link(j, ch.user_index(j, m));
            w[j].col(m) = g * (amp / g.norm());
        }
    return w;
}

InnerState make_inner_state(const Problem &prob, const Eigen::MatrixXd &alpha, Beamformers w, double eta)
{
    InnerState st;
    st.w = std::move(w);
    st.u = update_filters(prob.channels, alpha, st.w);
    st.s = update_slacks(prob.channels, alpha, st.w, st.u);
    st.g_current = g_value(prob.channels, alpha, st.w, eta, prob.power, prob.weights);
    return st;
}

InnerState inner_iterate(const InnerState &state, const Problem &prob, const Eigen::MatrixXd &alpha, double eta,
                         const InnerOptions &opts, const BlockObserver *observer)
{
    const ChannelSet &ch = prob.channels;
    InnerState next = state;
    auto observe = [&](std::string_view block, int bs) {
        if (observer)
            (*observer)(block, bs, h_value(ch, alpha, next.w, next.u, next.s, eta, prob.power, prob.weights));
    };

    next.u = update_filters(ch, alpha, next.w);
    observe("filters", -1);
    next.s = update_slacks(ch, alpha, next.w, next.u);
    observe("slacks", -1);
    for (int j = 0; j < ch.num_cells; ++j)
    {
        next.w[j] = solve_beamformers_bs(j, prob, alpha, next.u, next.s, eta, opts.lambda_tol).w;
        observe("bs", j);
    }

    next.g_current = g_value(ch, alpha, next.w, eta, prob.power, prob.weights);
    next.iter = state.iter + 1;
    if (next.g_current < state.g_current - opts.ascent_tol * std::max(1.0, std::abs(state.g_current)))
        throw std::logic_error("inner_iterate: objective decreased, " + std::to_string(state.g_current) +
                               " -> " + std::to_string(next.g_current));

    if (opts.trace)
    {
        *opts.trace << "inner " << next.iter << ' ' << next.g_current;
        for (const auto &wj : next.w)
            *opts.trace << ' ' << wj.squaredNorm();
        *opts.trace << '\n';
    }
    return next;
}

InnerResult inner_solve(const Problem &prob, const Eigen::MatrixXd &alpha, double eta, const Beamformers &init_w,
                        const InnerOptions &opts, const BlockObserver *observer)
{
    if (!(opts.delta > 0.0))
        throw std::invalid_argument("inner_solve: delta must be positive.");
    InnerResult res;
    res.state = make_inner_state(prob, alpha, init_w, eta);
    for (int it = 0; it < opts.max_iters; ++it)
    {
        InnerState next = inner_iterate(res.state, prob, alpha, eta, opts, observer);
        const double change = std::abs(next.g_current - res.state.g_current);
        res.state = std::move(next);
        ++res.sweeps;
        if (change < opts.delta)
        {
            res.converged = true;
            break;
        }
    }
    return res;
}

InnerResult inner_solve(const Problem &prob, std::span<const double> tilt_deg, double eta,
                        const Beamformers &init_w, const InnerOptions &opts)
{
    return inner_solve(prob, prob.gains.gains(tilt_deg), eta, init_w, opts);
}

} // namespace tiltbf
