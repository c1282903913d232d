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

#include "tiltbf/tiltsearch.hpp"

#include <iosfwd>
#include <optional>

namespace tiltbf
{

struct OuterConfig
{
    double epsilon = 1e-3;       // Bisection width tolerance on eta
    double delta = 1e-3;         // Inner tolerance on G, also the tilt-round stop
    int max_outer_iters = 64;
    int max_inner_iters = 1000;
    int max_tilt_rounds = 20;    // Inner-solve / tilt-round alternations per eta
    double zero_tol = 1e-6;      // |F| below zero_tol * f2 counts as F <= 0
    int max_restarts = 3;        // Re-bisections after a bracket is contradicted
    TiltSearchOptions tilt;
    std::ostream *trace = nullptr;

    void validate() const;
};

struct EtaEvaluation
{
    double f_value = 0.0; // f1 - eta f2 at the returned point
    Solution solution;    // ee holds the exact EE of the point
    int inner_solves = 0;
    int inner_nonconverged = 0;
    int tilt_evaluations = 0;
    int tilt_scans = 0;
};

// Approximates F(eta) = max over (W, tilt) of f1 - eta f2 by alternating the
// inner solver with tilt rounds. Runs from `init` and from initial_solution()
// and keeps the better result, so a warm start never loses to a cold one.
EtaEvaluation f_eta(double eta, const Problem &prob, const OuterConfig &cfg, const Solution &init);

// Matched beamformers at the most efficient of a ladder of powers, with mean-AoA tilts
Solution initial_solution(const Problem &prob, double tilt_step_deg);

struct OuterResult
{
    Solution solution; // Best EE encountered
    double eta_min = 0.0;
    double eta_max = 0.0;
    double eta_final = 0.0; // Midpoint of the final bracket
    double eta_upper_init = 0.0;
    int iterations = 0; // Bisection steps of the final pass
    int restarts = 0;
    int inner_solves = 0;
    int inner_nonconverged = 0;
    int tilt_evaluations = 0;
    int tilt_scans = 0;
    double initial_ee = 0.0;
};

// Sign bisection on eta over [0, R_max / (M L P_c + L P_0)]. Each step
// warm-starts from the best point found so far.
OuterResult outer_solve(const Problem &prob, const OuterConfig &cfg,
                        const std::optional<Solution> &init = std::nullopt);

} // namespace tiltbf
