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

#include "tiltbf/channel.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace tiltbf
{

double noise_referenced_loss_db(double bandwidth_hz, double noise_figure_db)
{
    if (!(bandwidth_hz > 0.0) || !std::isfinite(noise_figure_db))
        throw std::invalid_argument("noise_referenced_loss_db: requires bandwidth > 0 and finite noise figure.");
    return -174.0 + 10.0 * std::log10(bandwidth_hz) + noise_figure_db - 30.0;
}

void FadingParams::validate() const
{
    if (!(pathloss_exponent > 2.0))
        throw std::invalid_argument("FadingParams: pathloss exponent must exceed 2.");
    if (!(shadow_sigma_db >= 0.0))
        throw std::invalid_argument("FadingParams: shadowing deviation must be non-negative.");
    if (!(reference_distance_m > 0.0))
        throw std::invalid_argument("FadingParams: reference distance must be positive.");
    if (!std::isfinite(reference_loss_db))
        throw std::invalid_argument("FadingParams: reference loss must be finite.");
    if (noise_power != 1.0)
        throw std::invalid_argument("FadingParams: noise power is normalized to 1.");
}

FadingParams FadingParams::literal()
{
    FadingParams f;
    f.reference_distance_m = 1.0;
    f.reference_loss_db = 0.0;
    return f;
}

double large_scale_gain(const FadingParams &params, double distance_m, Rng &rng)
{
    if (!(distance_m > 0.0))
        throw std::domain_error("large_scale_gain: distance must be positive.");
    double shadow_db = 0.0;
    if (params.shadow_sigma_db > 0.0)
        shadow_db = std::normal_distribution<double>(0.0, params.shadow_sigma_db)(rng);
    return std::pow(10.0, (shadow_db - params.reference_loss_db) / 10.0) *
           std::pow(params.reference_distance_m / distance_m, params.pathloss_exponent);
}

Eigen::VectorXcd draw_channel_vector(double beta, int antennas, Rng &rng)
{
    if (!(beta > 0.0) || antennas < 1)
        throw std::invalid_argument("draw_channel_vector: requires beta > 0 and M >= 1.");
    std::normal_distribution<double> n(0.0, std::sqrt(beta / 2.0));
    Eigen::VectorXcd h(antennas);
    for (int k = 0; k < antennas; ++k)
    {
        const double re = n(rng);
        const double im = n(rng);
        h[k] = {re, im};
    }
    return h;
}

ChannelSet build_channel_set(const Drop &drop, const NetworkConfig &cfg, const FadingParams &params,
                             std::uint64_t seed)
{
    params.validate();
    if (drop.num_cells != cfg.num_cells || drop.users_per_cell != cfg.users_per_cell)
        throw std::invalid_argument("build_channel_set: drop does not match the configuration.");

    ChannelSet ch;
    ch.num_cells = cfg.num_cells;
    ch.users_per_cell = cfg.users_per_cell;
    ch.antennas = cfg.antennas;
    const int L = ch.num_cells, K = ch.users_per_cell, U = ch.num_users();
    ch.g.assign(static_cast<size_t>(L), Eigen::MatrixXcd(ch.antennas, U));
    ch.beta.resize(L, U);

    for (int i = 0; i < L; ++i)
        for (int u = 0; u < U; ++u)
        {
            Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(u / K),
                                       static_cast<std::uint64_t>(u % K)}));
            const double beta = large_scale_gain(params, drop.distance_m(i, u), rng);
            ch.beta(i, u) = beta;
            ch.g[i].col(u) = draw_channel_vector(beta, ch.antennas, rng);
        }
    return ch;
}

void write_channel_set(std::ostream &os, const ChannelSet &ch)
{
    const int K = ch.users_per_cell;
    os << std::setprecision(17);
    os << "channels " << ch.num_cells << ' ' << K << ' ' << ch.antennas << '\n';
    for (int i = 0; i < ch.num_cells; ++i)
        for (int u = 0; u < ch.num_users(); ++u)
        {
            os << "link " << i << ' ' << u / K << ' ' << u % K << ' ' << ch.beta(i, u);
            for (int k = 0; k < ch.antennas; ++k)
                os << ' ' << ch.g[i](k, u).real() << ' ' << ch.g[i](k, u).imag();
            os << '\n';
        }
}

} // namespace tiltbf
