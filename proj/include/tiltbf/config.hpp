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

#include "tiltbf/channel.hpp"
#include "tiltbf/dinkelbach.hpp"
#include "tiltbf/pattern.hpp"
#include "tiltbf/scenario.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tiltbf
{

enum class Mode
{
    cluster_3d,
    exhaustive_3d,
    baseline_2d
};

std::string_view mode_name(Mode m); // "3d_cluster", "3d_exhaustive", "2d_baseline"
std::optional<Mode> parse_mode(std::string_view name);

// Raised for malformed or out-of-range configuration
struct ConfigError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig
{
    NetworkConfig network;
    FadingParams fading;
    PatternParams pattern;
    std::vector<double> p_max_dbm{22.0, 28.0, 34.0, 40.0, 46.0, 50.0};
    std::vector<int> users_per_cell_sweep; // Empty: network.users_per_cell only
    double p_c_dbm = 30.0;
    double p_0_dbm = 40.0;
    double xi = 1.0;
    OuterConfig outer;
    std::vector<double> weights; // Empty: all ones; otherwise one per user (no K sweep)
    int num_drops = 100;
    std::uint64_t base_seed = 20260101;
    std::vector<Mode> modes{Mode::cluster_3d, Mode::baseline_2d};
    int workers = 0;                         // 0: hardware concurrency
    double max_nonconverged_fraction = 0.05; // Of inner solves, per sweep

    // Throws ConfigError
    void validate() const;

    std::vector<int> k_values() const;
    PowerModel power_model(double p_max_dbm) const;
    Weights weights_for(int users) const;
};

// 2500 drops, M in {4, 8} via two runs; this returns the M = 4 variant
ExperimentConfig paper_preset(int antennas = 4);

std::string config_to_json(const ExperimentConfig &cfg);

// Missing keys keep their defaults; unknown keys are rejected.
ExperimentConfig config_from_json(std::string_view text);
ExperimentConfig load_config(const std::string &path);

} // namespace tiltbf
