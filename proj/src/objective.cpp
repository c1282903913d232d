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

#include "tiltbf/objective.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tiltbf
{

void PowerModel::validate(int antennas, int cells) const
{
    if (!(p_max > 0.0))
        throw std::invalid_argument("PowerModel: p_max must be positive.");
    if (!(p_c >= 0.0) || !(p_0 >= 0.0) || !(xi >= 0.0))
        throw std::invalid_argument("PowerModel: p_c, p_0 and xi must be non-negative.");
    if (!(static_power(antennas, cells) > 0.0))
        throw std::invalid_argument("PowerModel: M L P_c + L P_0 must be positive.");
}

double PowerModel::dbm_to_watts(double dbm)
{
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

Weights Weights::uniform(int num_users, double value)
{
    return {Eigen::VectorXd::Constant(num_users, value)};
}

void Weights::validate(int num_users) const
{
    if (b.size() != num_users)
        throw std::invalid_argument("Weights: one weight per user required.");
    if ((b.array() <= 0.0).any())
        throw std::invalid_argument("Weights: all weights must be positive.");
}

GainModel::GainModel(const PatternParams &pattern, PatternMode mode, Eigen::MatrixXd elevation_deg,
                     Eigen::MatrixXd azimuth_deg, std::vector<double> boresight_deg, int users_per_cell)
    : pattern_(pattern), mode_(mode), elevation_deg_(std::move(elevation_deg)),
      azimuth_deg_(std::move(azimuth_deg)), boresight_deg_(std::move(boresight_deg)),
      users_per_cell_(users_per_cell)
{
    pattern_.validate();
    if (elevation_deg_.rows() != azimuth_deg_.rows() || elevation_deg_.cols() != azimuth_deg_.cols())
        throw std::invalid_argument("GainModel: angle matrices differ in shape.");
    if (static_cast<Eigen::Index>(boresight_deg_.size()) != elevation_deg_.rows())
        throw std::invalid_argument("GainModel: one boresight per BS required.");
    if (users_per_cell_ < 1 || elevation_deg_.cols() != elevation_deg_.rows() * users_per_cell_)
        throw std::invalid_argument("GainModel: user count does not match L * K.");
}

GainModel::GainModel(const PatternParams &pattern, PatternMode mode, const Drop &drop, const Layout &layout)
    : GainModel(pattern, mode, drop.elevation_aoa_deg, drop.azimuth_aoa_deg, layout.boresight_deg,
                drop.users_per_cell)
{
}

Eigen::MatrixXd GainModel::gains(std::span<const double> tilt_deg) const
{
    const int L = num_cells();
    if (has_tilt() && static_cast<int>(tilt_deg.size()) != L)
        throw std::invalid_argument("GainModel: one tilt per BS required.");
    Eigen::MatrixXd alpha(L, num_users());
    for (int i = 0; i < L; ++i)
        update_bs(alpha, i, has_tilt() ? tilt_deg[i] : 0.0);
    return alpha;
}

void GainModel::update_bs(Eigen::MatrixXd &alpha, int bs, double tilt_deg) const
{
    for (int u = 0; u < num_users(); ++u)
        alpha(bs, u) = link_gain_lin(pattern_, mode_, tilt_deg, elevation_deg_(bs, u), boresight_deg_[bs],
                                     azimuth_deg_(bs, u));
}

std::vector<double> GainModel::serving_aoas_deg(int cell) const
{
    std::vector<double> out(static_cast<size_t>(users_per_cell_));
    for (int m = 0; m < users_per_cell_; ++m)
        out[m] = elevation_deg_(cell, cell * users_per_cell_ + m);
    return out;
}

void check_dimensions(const ChannelSet &ch, const Eigen::MatrixXd &alpha, const Beamformers &w)
{
    const int L = ch.num_cells, U = ch.num_users();
    if (alpha.rows() != L || alpha.cols() != U)
        throw std::invalid_argument("Gain matrix does not match the channel set.");
    if (static_cast<int>(w.size()) != L)
        throw std::invalid_argument("One beamformer block per BS required.");
    for (const auto &wj : w)
        if (wj.rows() != ch.antennas || wj.cols() != ch.users_per_cell)
            throw std::invalid_argument("Beamformer block must be M x K.");
}

Eigen::MatrixXd received_powers(const ChannelSet &ch, const Eigen::MatrixXd &alpha, const Beamformers &w)
{
    check_dimensions(ch, alpha, w);
    const int L = ch.num_cells, K = ch.users_per_cell, U = ch.num_users();
    Eigen::MatrixXd rx(U, U);
    for (int i = 0; i < L; ++i)
    {
        const Eigen::MatrixXcd c = ch.g[i].adjoint() * w[i]; // U x K, g_iu^H w_in
        rx.middleCols(i * K, K) = (alpha.row(i).transpose().asDiagonal() * c.cwiseAbs2()).eval();
    }
    return rx;
}

Eigen::VectorXd sinr_all(const ChannelSet &ch, const Eigen::MatrixXd &alpha, const Beamformers &w)
{
    const Eigen::MatrixXd rx = received_powers(ch, alpha, w);
    const Eigen::VectorXd signal = rx.diagonal();
    const Eigen::VectorXd total = rx.rowwise().sum();
    return (signal.array() / ((total - signal).array() + 1.0)).matrix();
}

double sinr(const ChannelSet &ch, const Eigen::MatrixXd &alpha, const Beamformers &w, int cell, int user)
{
    check_dimensions(ch, alpha, w);
    if (cell < 0 || cell >= ch.num_cells || user < 0 || user >= ch.users_per_cell)
        throw std::out_of_range("sinr: user index out of range.");
    const int u = ch.user_index(cell, user);
    double interference = 0.0, signal = 0.0;
    for (int i = 0; i < ch.num_cells; ++i)
        for (int n = 0; n < ch.users_per_cell; ++n)
        {
            const double p = alpha(i, u) * std::norm(ch.link(i, u).dot(w[i].col(n)));
            if (i == cell && n == user)
                signal = p;
            else
                interference += p;
        }
    return signal / (interference + 1.0);
}

double user_rate_nats(const ChannelSet &ch, const Eigen::MatrixXd &alpha, const Beamformers &w, int cell,
                      int user)
{
    return std::log1p(sinr(ch, alpha, w, cell, user));
}

double weighted_sum_rate(const ChannelSet &ch, const Eigen::MatrixXd &alpha, const Beamformers &w,
                         const Weights &weights, RateUnit unit)
{
    weights.validate(ch.num_users());
    const Eigen::VectorXd gamma = sinr_all(ch, alpha, w);
    double total = 0.0;
    for (int u = 0; u < gamma.size(); ++u)
        total += weights.b[u] * std::log1p(gamma[u]);
    return unit == RateUnit::bits ? total / std::numbers::ln2 : total;
}

double bs_power(const Beamformers &w, int bs)
{
    return w.at(static_cast<size_t>(bs)).squaredNorm();
}

double transmit_power(const Beamformers &w)
{
    double p = 0.0;
    for (const auto &wj : w)
        p += wj.squaredNorm();
    return p;
}

double total_ee(const ChannelSet &ch, const Eigen::MatrixXd &alpha, const Beamformers &w,
                const PowerModel &power, const Weights &weights, RateUnit unit)
{
    const double f1 = weighted_sum_rate(ch, alpha, w, weights, unit);
    const double f2 = power.xi * transmit_power(w) + power.static_power(ch.antennas, ch.num_cells);
    return f1 / f2;
}

double r_max(const ChannelSet &ch, double p_max, double peak_gain_lin)
{
    double total = 0.0;
    for (int j = 0; j < ch.num_cells; ++j)
        for (int m = 0; m < ch.users_per_cell; ++m)
        {
            const int u = ch.user_index(j, m);
            total += std::log2(1.0 + peak_gain_lin * p_max * ch.link(j, u).squaredNorm());
        }
    return total;
}

double g_value(const ChannelSet &ch, const Eigen::MatrixXd &alpha, const Beamformers &w, double eta,
               const PowerModel &power, const Weights &weights)
{
    return weighted_sum_rate(ch, alpha, w, weights) - eta * power.xi * transmit_power(w);
}

double mse(const ChannelSet &ch, const Eigen::MatrixXd &alpha, const Beamformers &w, int cell, int user,
           cdouble mu)
{
    check_dimensions(ch, alpha, w);
    const int u = ch.user_index(cell, user);
    double total = 1.0;
    for (int i = 0; i < ch.num_cells; ++i)
        for (int n = 0; n < ch.users_per_cell; ++n)
            total += alpha(i, u) * std::norm(ch.link(i, u).dot(w[i].col(n)));
    const cdouble amp = ch.link(cell, u).dot(w[cell].col(user)) * std::sqrt(alpha(cell, u));
    return std::norm(mu) * total - 2.0 * std::real(std::conj(mu) * amp) + 1.0;
}

Eigen::VectorXd mse_all(const ChannelSet &ch, const Eigen::MatrixXd &alpha, const Beamformers &w,
                        const Eigen::VectorXcd &u)
{
    const Eigen::MatrixXd rx = received_powers(ch, alpha, w);
    const int U = ch.num_users(), K = ch.users_per_cell;
    if (u.size() != U)
        throw std::invalid_argument("mse_all: one filter per user required.");
    Eigen::VectorXd e(U);
    for (int k = 0; k < U; ++k)
    {
        const int j = k / K, m = k % K;
        const cdouble amp = ch.link(j, k).dot(w[j].col(m)) * std::sqrt(alpha(j, k));
        e[k] = std::norm(u[k]) * (rx.row(k).sum() + 1.0) - 2.0 * std::real(std::conj(u[k]) * amp) + 1.0;
    }
    return e;
}

double h_value(const ChannelSet &ch, const Eigen::MatrixXd &alpha, const Beamformers &w,
               const Eigen::VectorXcd &u, const Eigen::VectorXd &s, double eta, const PowerModel &power,
               const Weights &weights)
{
    const int U = ch.num_users();
    if (s.size() != U)
        throw std::invalid_argument("h_value: one slack per user required.");
    if ((s.array() <= 0.0).any())
        throw std::domain_error("h_value: slacks must be positive.");
    weights.validate(U);
    const Eigen::VectorXd e = mse_all(ch, alpha, w, u);
    double h = 0.0;
    for (int k = 0; k < U; ++k)
        h += weights.b[k] * (-e[k] * s[k] + std::log(s[k]) + 1.0);
    return h - eta * power.xi * transmit_power(w);
}

} // namespace tiltbf
