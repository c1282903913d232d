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

// Random problem instances and reference implementations used across tests.
// The reference formulas are written out term by term and share no code with
// the library beyond its data types.

#pragma once

#include "tiltbf/dinkelbach.hpp"

#include <cmath>
#include <complex>
#include <memory>
#include <random>

namespace fixture
{

using namespace tiltbf;

// Owns everything a Problem refers to
struct Instance
{
    ChannelSet ch;
    std::unique_ptr<GainModel> gains;
    PowerModel power;
    Weights weights;

    Problem problem() const { return Problem{ch, *gains, power, weights}; }
};

inline Eigen::VectorXcd complex_gaussian(int n, double var, std::mt19937_64 &rng)
{
    std::normal_distribution<double> nd(0.0, std::sqrt(var / 2.0));
    Eigen::VectorXcd v(n);
    for (int k = 0; k < n; ++k)
        v[k] = {nd(rng), nd(rng)};
    return v;
}

// Log-uniform large-scale gains in [beta_lo, beta_hi], random AoAs and
// boresights, uniform or random weights.
inline Instance random_instance(std::uint64_t seed, int L, int K, int M, double p_max = 10.0,
                                double beta_lo = 0.1, double beta_hi = 100.0, bool random_weights = false,
                                PatternMode mode = PatternMode::full_3d)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const int U = L * K;
    Instance in;
    in.ch.num_cells = L;
    in.ch.users_per_cell = K;
    in.ch.antennas = M;
    in.ch.beta.resize(L, U);
    in.ch.g.assign(static_cast<size_t>(L), Eigen::MatrixXcd(M, U));
    for (int i = 0; i < L; ++i)
        for (int u = 0; u < U; ++u)
        {
            const double beta = beta_lo * std::pow(beta_hi / beta_lo, u01(rng));
            in.ch.beta(i, u) = beta;
            in.ch.g[i].col(u) = complex_gaussian(M, beta, rng);
        }

    Eigen::MatrixXd elev(L, U), azim(L, U);
    std::vector<double> bore(static_cast<size_t>(L));
    for (int i = 0; i < L; ++i)
    {
        bore[i] = 360.0 * u01(rng);
        for (int u = 0; u < U; ++u)
        {
            elev(i, u) = 1.0 + 30.0 * u01(rng);
            azim(i, u) = bore[i] + 140.0 * (u01(rng) - 0.5);
        }
    }
    in.gains = std::make_unique<GainModel>(PatternParams{}, mode, elev, azim, bore, K);
    in.power = PowerModel{p_max, 1.0, 10.0, 1.0};
    in.weights = Weights::uniform(U);
    if (random_weights)
        for (int u = 0; u < U; ++u)
            in.weights.b[u] = 0.5 + u01(rng);
    return in;
}

inline Beamformers random_beamformers(const ChannelSet &ch, double p_max, std::mt19937_64 &rng,
                                      bool full_power = false)
{
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    Beamformers w;
    for (int j = 0; j < ch.num_cells; ++j)
    {
        Eigen::MatrixXcd wj(ch.antennas, ch.users_per_cell);
        for (int m = 0; m < ch.users_per_cell; ++m)
            wj.col(m) = complex_gaussian(ch.antennas, 1.0, rng);
        const double scale = full_power ? 1.0 : u01(rng);
        wj *= std::sqrt(scale * p_max) / wj.norm();
        w.push_back(wj);
    }
    return w;
}

inline std::vector<double> random_tilts(int L, std::mt19937_64 &rng)
{
    std::uniform_real_distribution<double> u(0.5, 40.0);
    std::vector<double> t;
    for (int i = 0; i < L; ++i)
        t.push_back(u(rng));
    return t;
}

// |sqrt(alpha) g^H w|^2 summed by explicit loops
inline double ref_rx_power(const ChannelSet &ch, const Eigen::MatrixXd &alpha, const Beamformers &w, int bs,
                           int stream, int u)
{
    std::complex<double> acc = 0.0;
    for (int k = 0; k < ch.antennas; ++k)
        acc += std::conj(ch.g[bs](k, u)) * w[bs](k, stream);
    return alpha(bs, u) * std::norm(acc);
}

inline double ref_sinr(const ChannelSet &ch, const Eigen::MatrixXd &alpha, const Beamformers &w, int j, int m)
{
    const int u = j * ch.users_per_cell + m;
    const double signal = ref_rx_power(ch, alpha, w, j, m, u);
    double interference = 0.0;
    for (int i = 0; i < ch.num_cells; ++i)
        for (int n = 0; n < ch.users_per_cell; ++n)
            if (i != j || n != m)
                interference += ref_rx_power(ch, alpha, w, i, n, u);
    return signal / (interference + 1.0);
}

inline double ref_sum_rate_nats(const ChannelSet &ch, const Eigen::MatrixXd &alpha, const Beamformers &w,
                                const Weights &b)
{
    double r = 0.0;
    for (int j = 0; j < ch.num_cells; ++j)
        for (int m = 0; m < ch.users_per_cell; ++m)
            r += b.b[j * ch.users_per_cell + m] * std::log(1.0 + ref_sinr(ch, alpha, w, j, m));
    return r;
}

inline double ref_tx_power(const Beamformers &w)
{
    double p = 0.0;
    for (const auto &wj : w)
        for (Eigen::Index c = 0; c < wj.cols(); ++c)
            for (Eigen::Index r = 0; r < wj.rows(); ++r)
                p += std::norm(wj(r, c));
    return p;
}

inline double ref_ee(const ChannelSet &ch, const Eigen::MatrixXd &alpha, const Beamformers &w,
                     const PowerModel &pm, const Weights &b)
{
    const double denom = pm.xi * ref_tx_power(w) + ch.antennas * ch.num_cells * pm.p_c + ch.num_cells * pm.p_0;
    return ref_sum_rate_nats(ch, alpha, w, b) / denom;
}

// MMSE receive coefficient: sqrt(alpha) g^H w_own / (total received power + 1)
inline std::complex<double> ref_mmse_filter(const ChannelSet &ch, const Eigen::MatrixXd &alpha,
                                            const Beamformers &w, int j, int m)
{
    const int u = j * ch.users_per_cell + m;
    std::complex<double> num = 0.0;
    for (int k = 0; k < ch.antennas; ++k)
        num += std::conj(ch.g[j](k, u)) * w[j](k, m);
    num *= std::sqrt(alpha(j, u));
    double total = 1.0;
    for (int i = 0; i < ch.num_cells; ++i)
        for (int n = 0; n < ch.users_per_cell; ++n)
            total += ref_rx_power(ch, alpha, w, i, n, u);
    return num / total;
}

// E|mu^* y - d|^2 expanded for unit-power symbols and unit noise
inline double ref_mse(const ChannelSet &ch, const Eigen::MatrixXd &alpha, const Beamformers &w, int j, int m,
                      std::complex<double> mu)
{
    const int u = j * ch.users_per_cell + m;
    double total = 1.0;
    for (int i = 0; i < ch.num_cells; ++i)
        for (int n = 0; n < ch.users_per_cell; ++n)
            total += ref_rx_power(ch, alpha, w, i, n, u);
    std::complex<double> a = 0.0;
    for (int k = 0; k < ch.antennas; ++k)
        a += std::conj(ch.g[j](k, u)) * w[j](k, m);
    a *= std::sqrt(alpha(j, u));
    return std::norm(mu) * total - 2.0 * std::real(std::conj(mu) * a) + 1.0;
}

inline double rel_err(double a, double b)
{
    return std::abs(a - b) / std::max(1.0, std::abs(b));
}

} // namespace fixture
