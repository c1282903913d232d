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

#include "tiltbf/random.hpp"
#include "tiltbf/scenario.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace tiltbf
{

// Receiver noise power in dBW: thermal density -174 dBm/Hz over the bandwidth
// plus the noise figure. Used as the reference loss, so that beta = z / d^v
// (d in metres) comes out normalized to unit noise with powers in watts.
double noise_referenced_loss_db(double bandwidth_hz = 10e6, double noise_figure_db = 9.0);

struct FadingParams
{
    double pathloss_exponent = 3.8;
    double shadow_sigma_db = 8.0;
    double reference_distance_m = 1.0;
    double reference_loss_db = noise_referenced_loss_db(); // -125 dB
    double noise_power = 1.0; // Fixed; every SINR below assumes unit noise

    void validate() const;

    // beta = 1 / d^v with d in meters
    static FadingParams literal();
};

// g[i] holds the channel vectors from BS i to every user as columns (M x L*K),
// beta(i, u) the matching large-scale gain.
struct ChannelSet
{
    int num_cells = 0;
    int users_per_cell = 0;
    int antennas = 0;
    std::vector<Eigen::MatrixXcd> g;
    Eigen::MatrixXd beta;

    int num_users() const { return num_cells * users_per_cell; }
    int user_index(int cell, int user) const { return cell * users_per_cell + user; }
    auto link(int bs, int u) const { return g[bs].col(u); }
};

double large_scale_gain(const FadingParams &params, double distance_m, Rng &rng);

// Circularly-symmetric complex Gaussian entries with variance beta
Eigen::VectorXcd draw_channel_vector(double beta, int antennas, Rng &rng);

// Each (i, j, m) link draws from its own derived generator.
ChannelSet build_channel_set(const Drop &drop, const NetworkConfig &cfg, const FadingParams &params,
                             std::uint64_t seed);

// Text record: "channels L K M", then per link
// "link i j m beta re_0 im_0 ... re_{M-1} im_{M-1}".
void write_channel_set(std::ostream &os, const ChannelSet &ch);

} // namespace tiltbf
