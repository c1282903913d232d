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

#include "tiltbf/wmmse.hpp"

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace tiltbf
{

// Users of one cell whose sorted serving AoAs chain with gaps below the
// clustering threshold.
struct Cluster
{
    std::vector<int> members; // Sorted by AoA
    double span_min_deg = 0.0;
    double span_max_deg = 0.0;
};

std::vector<Cluster> cluster_users(std::span<const double> aoas_deg, double threshold_deg);

using TiltObjective = std::function<double(double)>;

// Index of the user whose AoA, used as the tilt, maximizes the objective.
// Ties go to the smallest index.
int chosen_user(std::span<const double> aoas_deg, const TiltObjective &eval);

struct ScanResult
{
    double tilt_deg = 0.0;
    double value = 0.0;
    int evaluations = 0;
};

// Points of the lattice {k * step} inside [lo, hi]. If the interval holds no
// lattice point the lattice point nearest to its centre is returned.
std::vector<double> lattice_grid(double lo_deg, double hi_deg, double step_deg);

// Scans the cluster span widened by `halfwidth_deg` on both sides and clipped to
// the open tilt range, on the step lattice. Endpoints are snapped inwards so
// every candidate is also a point of the full-range exhaustive grid.
ScanResult greedy_tilt_scan(const Cluster &cluster, double step_deg, double halfwidth_deg,
                            const TiltObjective &eval);

// Grid lo, lo + step, ... up to hi (hi appended when the spacing does not land
// on it). First maximum wins.
ScanResult exhaustive_tilt_scan(double lo_deg, double hi_deg, double step_deg, const TiltObjective &eval);

enum class TiltStrategy
{
    cluster,
    exhaustive
};

struct TiltSearchOptions
{
    TiltStrategy strategy = TiltStrategy::cluster;
    double step_deg = 0.1;
    bool scan_all_clusters = false;
    std::optional<double> threshold_deg; // Default: twice the concavity half-width
    int eval_sweeps = 0; // Full inner sweeps after the BS re-solve in each candidate evaluation
};

// Lattice-snapped starting tilts: the mean serving AoA of each cell
std::vector<double> initial_tilts(const GainModel &gains, double step_deg);

struct TiltRoundStats
{
    int evaluations = 0;
    int scans = 0;
    int changed = 0;
};

// One pass over the BSs in index order. For BS j the objective of a candidate
// tilt is G after re-solving BS j's beamformers at that tilt with the current
// filters and slacks; the other tilts stay fixed. A tilt is only accepted if it
// raises G, after which filters and slacks are refreshed.
TiltRoundStats tilt_round(const Problem &prob, InnerState &state, Eigen::MatrixXd &alpha,
                          std::vector<double> &tilt_deg, double eta, const TiltSearchOptions &opts,
                          double lambda_tol = 1e-12);

} // namespace tiltbf
