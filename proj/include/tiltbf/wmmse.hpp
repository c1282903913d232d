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

#pragma once

#include "tiltbf/objective.hpp"

#include <functional>
#include <iosfwd>
#include <span>
#include <string_view>

namespace tiltbf
{

struct InnerOptions
{
    double delta = 1e-3;        // Stop when successive G values differ by less
    int max_iters = 200;        // Sweeps
    double ascent_tol = 1e-9;   // Relative slack on the per-sweep ascent check
    double lambda_tol = 1e-12;  // Relative power tolerance of the multiplier search
    std::ostream *trace = nullptr;
};

struct InnerState
{
    Beamformers w;
    Eigen::VectorXcd u;
    Eigen::VectorXd s;
    double g_current = 0.0;
    int iter = 0;
};

struct BsBeamformers
{
    Eigen::MatrixXcd w; // M x K
    double lambda = 0.0;
    double power = 0.0;
};

// MMSE receive filters for the given beamformers
Eigen::VectorXcd update_filters(const ChannelSet &ch, const Eigen::MatrixXd &alpha, const Beamformers &w);

// s = 1 / mse at the given filters
Eigen::VectorXd update_slacks(const ChannelSet &ch, const Eigen::MatrixXd &alpha, const Beamformers &w,
                              const Eigen::VectorXcd &u);

// Smallest lambda >= 0 with power_of(lambda) <= p_max, where power_of is
// continuous and strictly decreasing. Returns 0 when the unconstrained point is
// feasible; otherwise brackets by doubling from 1 and bisects until the power
// is within tol * p_max of the budget (or the bracket collapses). The returned
// lambda always satisfies power_of(lambda) <= p_max.
double lambda_search(const std::function<double(double)> &power_of, double p_max, double tol);

// Maximizes the WMMSE surrogate over the beamformers of one BS for fixed
// filters and slacks:
//   w_jm = b_jm s_jm mu_jm (A_j + lambda_j I)^-1 g_jjm sqrt(alpha_jj),
//   A_j  = sum_u b_u s_u |mu_u|^2 alpha_ju g_ju g_ju^H + eta xi I.
BsBeamformers solve_beamformers_bs(int bs, const Problem &prob, const Eigen::MatrixXd &alpha,
                                   const Eigen::VectorXcd &u, const Eigen::VectorXd &s, double eta,
                                   double lambda_tol = 1e-12);

// g_jjm / |g_jjm| * sqrt(P / K) for every user
Beamformers matched_beamformers(const ChannelSet &ch, double p_max);

// Filters, slacks and G for given beamformers
InnerState make_inner_state(const Problem &prob, const Eigen::MatrixXd &alpha, Beamformers w, double eta);

// Called after every block update with the block name ("filters", "slacks",
// "bs") the BS index (or -1) and the surrogate value H after the update.
using BlockObserver = std::function<void(std::string_view block, int bs, double h)>;

// One sweep: filters, slacks, then every BS's beamformers. Throws
// std::logic_error if G decreases beyond the ascent tolerance.
InnerState inner_iterate(const InnerState &state, const Problem &prob, const Eigen::MatrixXd &alpha,
                         double eta, const InnerOptions &opts = {}, const BlockObserver *observer = nullptr);

struct InnerResult
{
    InnerState state;
    bool converged = false;
    int sweeps = 0;
};

InnerResult inner_solve(const Problem &prob, const Eigen::MatrixXd &alpha, double eta, const Beamformers &init_w,
                        const InnerOptions &opts = {}, const BlockObserver *observer = nullptr);

InnerResult inner_solve(const Problem &prob, std::span<const double> tilt_deg, double eta,
                        const Beamformers &init_w, const InnerOptions &opts = {});

} // namespace tiltbf
