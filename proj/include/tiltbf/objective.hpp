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
#include "tiltbf/pattern.hpp"
#include "tiltbf/scenario.hpp"

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <vector>

namespace tiltbf
{

using cdouble = std::complex<double>;

// Beamformers of BS j as columns of an M x K matrix
using Beamformers = std::vector<Eigen::MatrixXcd>;

struct PowerModel
{
    double p_max = 39.810717055349734; // Per-BS budget in watts (46 dBm)
    double p_c = 1.0;                  // Per RF chain, watts (30 dBm)
    double p_0 = 10.0;                 // Per site, watts (40 dBm)
    double xi = 1.0;                   // Amplifier inefficiency

    void validate(int antennas, int cells) const;

    // M L P_c + L P_0, the floor of the EE denominator
    double static_power(int antennas, int cells) const
    {
        return antennas * cells * p_c + cells * p_0;
    }

    static double dbm_to_watts(double dbm);
};

struct Weights
{
    Eigen::VectorXd b; // Indexed by u = j * K + m

    static Weights uniform(int num_users, double value = 1.0);
    void validate(int num_users) const;
};

// Link power gains alpha(i, u) for BS i towards user u as a function of the BS
// tilts. Azimuth offsets and elevation AoAs come from a drop.
class GainModel
{
  public:
    GainModel(const PatternParams &pattern, PatternMode mode, Eigen::MatrixXd elevation_deg,
              Eigen::MatrixXd azimuth_deg, std::vector<double> boresight_deg, int users_per_cell);
    GainModel(const PatternParams &pattern, PatternMode mode, const Drop &drop, const Layout &layout);

    bool has_tilt() const { return mode_ == PatternMode::full_3d; }
    PatternMode mode() const { return mode_; }
    const PatternParams &pattern() const { return pattern_; }
    int num_cells() const { return static_cast<int>(elevation_deg_.rows()); }
    int num_users() const { return static_cast<int>(elevation_deg_.cols()); }
    int users_per_cell() const { return users_per_cell_; }

    // Tilts are ignored in azimuth-only mode and may be empty there
    Eigen::MatrixXd gains(std::span<const double> tilt_deg) const;
    void update_bs(Eigen::MatrixXd &alpha, int bs, double tilt_deg) const;

    // Serving-link elevation AoAs of the users of `cell`
    std::vector<double> serving_aoas_deg(int cell) const;

  private:
    PatternParams pattern_;
    PatternMode mode_;
    Eigen::MatrixXd elevation_deg_;
    Eigen::MatrixXd azimuth_deg_;
    std::vector<double> boresight_deg_;
    int users_per_cell_;
};

// Candidate point of the joint problem plus the WMMSE auxiliaries.
struct Solution
{
    Beamformers w;
    std::vector<double> tilt_deg; // Empty when the pattern has no tilt
    Eigen::VectorXcd u;           // Receive filters
    Eigen::VectorXd s;            // MMSE weights (slacks)
    double eta = 0.0;
    double ee = 0.0;
};

// Bundles what every evaluation needs. Holds references; the caller owns the
// channel set and gain model.
struct Problem
{
    const ChannelSet &channels;
    const GainModel &gains;
    PowerModel power;
    Weights weights;

    int num_cells() const { return channels.num_cells; }
    int users_per_cell() const { return channels.users_per_cell; }
    int antennas() const { return channels.antennas; }
    double static_power() const { return power.static_power(antennas(), num_cells()); }
};

enum class RateUnit
{
    nats,
    bits
};

// (u, s): alpha(i, u) |g_iu^H w_in|^2 for stream s = i * K + n. The diagonal is
// the useful signal of each user.
Eigen::MatrixXd received_powers(const ChannelSet &ch, const Eigen::MatrixXd &alpha, const Beamformers &w);

Eigen::VectorXd sinr_all(const ChannelSet &ch, const Eigen::MatrixXd &alpha, const Beamformers &w);
double sinr(const ChannelSet &ch, const Eigen::MatrixXd &alpha, const Beamformers &w, int cell, int user);
double user_rate_nats(const ChannelSet &ch, const Eigen::MatrixXd &alpha, const Beamformers &w, int cell,
                      int user);

double weighted_sum_rate(const ChannelSet &ch, const Eigen::MatrixXd &alpha, const Beamformers &w,
                         const Weights &weights, RateUnit unit = RateUnit::nats);

double bs_power(const Beamformers &w, int bs);
double transmit_power(const Beamformers &w);

// Weighted sum rate over xi * transmit power + M L P_c + L P_0
double total_ee(const ChannelSet &ch, const Eigen::MatrixXd &alpha, const Beamformers &w,
                const PowerModel &power, const Weights &weights, RateUnit unit = RateUnit::nats);

// Interference-free full-power rate bound in bits. `peak_gain_lin` scales every
// channel and must be at least the largest link gain for the bound to hold.
double r_max(const ChannelSet &ch, double p_max, double peak_gain_lin = 1.0);

// Weighted sum rate minus eta * xi * transmit power
double g_value(const ChannelSet &ch, const Eigen::MatrixXd &alpha, const Beamformers &w, double eta,
               const PowerModel &power, const Weights &weights);

double mse(const ChannelSet &ch, const Eigen::MatrixXd &alpha, const Beamformers &w, int cell, int user,
           cdouble mu);
Eigen::VectorXd mse_all(const ChannelSet &ch, const Eigen::MatrixXd &alpha, const Beamformers &w,
                        const Eigen::VectorXcd &u);

double h_value(const ChannelSet &ch, const Eigen::MatrixXd &alpha, const Beamformers &w,
               const Eigen::VectorXcd &u, const Eigen::VectorXd &s, double eta, const PowerModel &power,
               const Weights &weights);

void check_dimensions(const ChannelSet &ch, const Eigen::MatrixXd &alpha, const Beamformers &w);

} // namespace tiltbf
