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

#include "tiltbf/config.hpp"

#include <atomic>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

namespace tiltbf
{

// Outcome of one mode at one power on one drop
struct DropRecord
{
    Mode mode = Mode::cluster_3d;
    double p_max_dbm = 0.0;
    int users_per_cell = 0;
    double ee = 0.0;            // nats per joule
    double sumrate_nats = 0.0;  // Weighted
    double power_used = 0.0;    // Mean per-BS transmit power, watts
    double outer_iters = 0.0;
    int inner_solves = 0;
    int inner_nonconverged = 0;
    int tilt_evaluations = 0;
    std::vector<double> tilt_deg;
};

// Geometry and channels of one drop. Seeds derive from (base_seed, drop_index);
// the first K users of a cell do not depend on K.
struct DropInstance
{
    Layout layout;
    Drop drop;
    ChannelSet channels;
};

DropInstance make_drop(const ExperimentConfig &cfg, int drop_index, int users_per_cell);

// Solves one mode on the given channels. The 2D baseline uses the azimuth-only
// pattern and no tilt variable.
// Exhaustive mode starts from `cluster_solution`, solving clustering first when
// none is given; its reported counters cover only its own search.
OuterResult solve_mode(const ExperimentConfig &cfg, const DropInstance &inst, Mode mode, double p_max_dbm,
                       std::ostream *trace = nullptr, const Solution *cluster_solution = nullptr);

OuterResult solve_2d_baseline(const ExperimentConfig &cfg, const DropInstance &inst, double p_max_dbm);

// Every configured mode at every listed power on the same channels
std::vector<DropRecord> run_drop(const ExperimentConfig &cfg, int drop_index, std::span<const double> p_max_dbm,
                                 int users_per_cell);

struct SweepRow
{
    double p_max_dbm = 0.0;
    Mode mode = Mode::cluster_3d;
    int users_per_cell = 0;
    int antennas = 0;
    int num_cells = 0;
    double mean_ee = 0.0;
    double stderr_ee = 0.0;
    double mean_sumrate_nats = 0.0;
    double mean_power_used = 0.0;
    double mean_outer_iters = 0.0;
    int drops = 0;
    double mean_tilt_evaluations = 0.0;
    double wall_time_s = 0.0; // Summed solve time of the row's drops
};

struct GainRow
{
    double p_max_dbm = 0.0;
    int users_per_cell = 0;
    double gain_percent = 0.0;        // 100 (mean EE_3d - mean EE_2d) / mean EE_2d
    double mean_paired_diff = 0.0;    // Per-drop EE_3d - EE_2d
    double stderr_paired_diff = 0.0;
    int drops = 0;
};

struct SweepResult
{
    std::vector<SweepRow> rows;
    std::vector<GainRow> gains; // Needs both 3d_cluster and 2d_baseline
    // records[job] holds run_drop output for each completed (K, drop) job
    std::vector<std::vector<DropRecord>> records;
    int completed_drops = 0;
    int inner_solves = 0;
    int inner_nonconverged = 0;
    bool interrupted = false;

    double nonconverged_fraction() const
    {
        return inner_solves == 0 ? 0.0 : static_cast<double>(inner_nonconverged) / inner_solves;
    }
};

using ProgressFn = std::function<void(int done, int total)>;

// Drops run on worker threads; aggregation is in drop order and therefore
// independent of scheduling. Setting `stop` makes workers finish their current
// drop and aggregates what completed.
SweepResult run_sweep(const ExperimentConfig &cfg, const std::atomic<bool> *stop = nullptr,
                      const ProgressFn &progress = {});

inline constexpr const char *csv_header =
    "p_max_dbm,mode,K,M,L,mean_ee,stderr_ee,mean_sumrate_nats,mean_power_used,mean_outer_iters,drops";

void write_csv(std::ostream &os, const std::vector<SweepRow> &rows);
void write_gain_csv(std::ostream &os, const std::vector<GainRow> &rows);

// Mean and standard error of the mean (0 for fewer than two samples)
std::pair<double, double> mean_stderr(std::span<const double> x);

} // namespace tiltbf
