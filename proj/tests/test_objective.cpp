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

#include "fixture.hpp"

#include <doctest.h>

#include <stdexcept>

#include <numbers>

using namespace tiltbf;
using namespace fixture;

TEST_SUITE("objective")
{
    TEST_CASE("SINR, rates and EE agree with the term-by-term reference")
    {
        std::mt19937_64 rng(21);
        for (int trial = 0; trial < 200; ++trial)
        {
            const int L = 1 + trial % 3, K = 1 + trial % 4, M = 1 + trial % 5;
            const Instance in = random_instance(1000 + trial, L, K, M, 5.0, 0.01, 50.0, true);
            const auto tilts = random_tilts(L, rng);
            const Eigen::MatrixXd alpha = in.gains->gains(tilts);
            const Beamformers w = random_beamformers(in.ch, 5.0, rng);
            const Eigen::VectorXd all = sinr_all(in.ch, alpha, w);
            for (int j = 0; j < L; ++j)
                for (int m = 0; m < K; ++m)
                {
                    const double ref = ref_sinr(in.ch, alpha, w, j, m);
                    CHECK(sinr(in.ch, alpha, w, j, m) == doctest::Approx(ref).epsilon(1e-12));
                    CHECK(all[j * K + m] == doctest::Approx(ref).epsilon(1e-12));
                    CHECK(user_rate_nats(in.ch, alpha, w, j, m) == doctest::Approx(std::log1p(ref)).epsilon(1e-12));
                }
            const double rate = ref_sum_rate_nats(in.ch, alpha, w, in.weights);
            CHECK(weighted_sum_rate(in.ch, alpha, w, in.weights) == doctest::Approx(rate).epsilon(1e-12));
            CHECK(weighted_sum_rate(in.ch, alpha, w, in.weights, RateUnit::bits) ==
                  doctest::Approx(rate / std::numbers::ln2).epsilon(1e-12));
            CHECK(total_ee(in.ch, alpha, w, in.power, in.weights) ==
                  doctest::Approx(ref_ee(in.ch, alpha, w, in.power, in.weights)).epsilon(1e-12));
            CHECK(transmit_power(w) == doctest::Approx(ref_tx_power(w)).epsilon(1e-12));
        }
    }

    TEST_CASE("single link SINR by hand")
    {
        // M = 1, L = 1, K = 1: SINR = alpha |g|^2 |w|^2
        Instance in = random_instance(3, 1, 1, 1);
        in.ch.g[0](0, 0) = {0.6, -0.8};
        Beamformers w{Eigen::MatrixXcd::Constant(1, 1, cdouble(0.0, 2.0))};
        Eigen::MatrixXd alpha = Eigen::MatrixXd::Constant(1, 1, 0.5);
        CHECK(sinr(in.ch, alpha, w, 0, 0) == doctest::Approx(2.0));
        CHECK(g_value(in.ch, alpha, w, 0.25, in.power, in.weights) == doctest::Approx(std::log(3.0) - 1.0));
    }

    TEST_CASE("MSE formula and the rate identity at the MMSE filter")
    {
        std::mt19937_64 rng(5);
        for (int trial = 0; trial < 100; ++trial)
        {
            const Instance in = random_instance(2000 + trial, 3, 2, 3);
            const Eigen::MatrixXd alpha = in.gains->gains(random_tilts(3, rng));
            const Beamformers w = random_beamformers(in.ch, 10.0, rng);
            for (int j = 0; j < 3; ++j)
                for (int m = 0; m < 2; ++m)
                {
                    const cdouble arbitrary(0.3 * trial, -0.1);
                    CHECK(mse(in.ch, alpha, w, j, m, arbitrary) ==
                          doctest::Approx(ref_mse(in.ch, alpha, w, j, m, arbitrary)).epsilon(1e-12));
                    const cdouble mu = ref_mmse_filter(in.ch, alpha, w, j, m);
                    const double e = mse(in.ch, alpha, w, j, m, mu);
                    CHECK(std::abs(-std::log(e) - user_rate_nats(in.ch, alpha, w, j, m)) <= 1e-9);
                    // The MMSE filter minimizes the MSE
                    CHECK(e <= mse(in.ch, alpha, w, j, m, mu * 1.01) + 1e-15);
                    CHECK(e <= mse(in.ch, alpha, w, j, m, mu + cdouble(0.0, 1e-3)) + 1e-15);
                }
        }
    }

    TEST_CASE("surrogate equals G at the optimal filters and slacks and bounds it elsewhere")
    {
        std::mt19937_64 rng(9);
        for (int trial = 0; trial < 200; ++trial)
        {
            const Instance in = random_instance(3000 + trial, 2, 2, 2, 10.0, 0.1, 100.0, true);
            const Eigen::MatrixXd alpha = in.gains->gains(random_tilts(2, rng));
            const Beamformers w = random_beamformers(in.ch, 10.0, rng);
            const double eta = 0.05 * (trial % 7);
            Eigen::VectorXcd u(4);
            Eigen::VectorXd s(4);
            for (int k = 0; k < 4; ++k)
            {
                u[k] = ref_mmse_filter(in.ch, alpha, w, k / 2, k % 2);
                s[k] = 1.0 / ref_mse(in.ch, alpha, w, k / 2, k % 2, u[k]);
            }
            const double g = g_value(in.ch, alpha, w, eta, in.power, in.weights);
            const double h = h_value(in.ch, alpha, w, u, s, eta, in.power, in.weights);
            CHECK(std::abs(h - g) <= 1e-9 * (1.0 + std::abs(g)));
            CHECK(s[0] == doctest::Approx(1.0 + ref_sinr(in.ch, alpha, w, 0, 0)).epsilon(1e-12));

            Eigen::VectorXcd u2 = u * cdouble(0.9, 0.1);
            Eigen::VectorXd s2 = s * 1.3;
            CHECK(h_value(in.ch, alpha, w, u2, s2, eta, in.power, in.weights) <= g + 1e-12);
        }
    }

    TEST_CASE("SINR is invariant to trading channel gain against transmit power")
    {
        std::mt19937_64 rng(4);
        Instance in = random_instance(17, 3, 2, 4);
        const Eigen::MatrixXd alpha = in.gains->gains(random_tilts(3, rng));
        Beamformers w = random_beamformers(in.ch, 10.0, rng);
        const Eigen::VectorXd before = sinr_all(in.ch, alpha, w);
        const double c = 37.0;
        for (auto &g : in.ch.g)
            g *= std::sqrt(c);
        for (auto &wj : w)
            wj /= std::sqrt(c);
        const Eigen::VectorXd after = sinr_all(in.ch, alpha, w);
        for (int k = 0; k < before.size(); ++k)
            CHECK(after[k] == doctest::Approx(before[k]).epsilon(1e-12));
    }

    TEST_CASE("rate bound holds for every feasible point")
    {
        std::mt19937_64 rng(8);
        for (int trial = 0; trial < 200; ++trial)
        {
            const Instance in = random_instance(4000 + trial, 3, 2, 4, 20.0);
            const Eigen::MatrixXd alpha = in.gains->gains(random_tilts(3, rng));
            const Beamformers w = random_beamformers(in.ch, 20.0, rng);
            const double peak = db_to_lin(in.gains->pattern().g_max_db);
            CHECK(alpha.maxCoeff() <= peak);
            CHECK(weighted_sum_rate(in.ch, alpha, w, in.weights, RateUnit::bits) <= r_max(in.ch, 20.0, peak));
        }
    }

    TEST_CASE("gain model follows the pattern for every link")
    {
        const Instance in = random_instance(5, 3, 2, 2);
        const std::vector<double> t{4.0, 9.0, 15.5};
        Eigen::MatrixXd alpha = in.gains->gains(t);
        CHECK(alpha.rows() == 3);
        CHECK(alpha.cols() == 6);
        CHECK(in.gains->has_tilt());
        in.gains->update_bs(alpha, 1, 30.0);
        const std::vector<double> t2{4.0, 30.0, 15.5};
        CHECK(alpha.isApprox(in.gains->gains(t2), 1e-15));
        const auto aoas = in.gains->serving_aoas_deg(2);
        CHECK(aoas.size() == 2);
    }

    TEST_CASE("power model and weights")
    {
        CHECK(PowerModel::dbm_to_watts(30.0) == doctest::Approx(1.0));
        CHECK(PowerModel::dbm_to_watts(46.0) == doctest::Approx(39.810717).epsilon(1e-7));
        const PowerModel pm;
        CHECK(pm.static_power(4, 3) == doctest::Approx(4 * 3 * 1.0 + 3 * 10.0));
        PowerModel bad;
        bad.p_max = 0.0;
        CHECK_THROWS_AS(bad.validate(4, 3), std::invalid_argument);
        Weights w = Weights::uniform(3);
        w.b[1] = -1.0;
        CHECK_THROWS_AS(w.validate(3), std::invalid_argument);
        CHECK_THROWS_AS(Weights::uniform(2).validate(3), std::invalid_argument);
    }

    TEST_CASE("dimension and domain errors")
    {
        std::mt19937_64 rng(1);
        const Instance in = random_instance(1, 2, 2, 2);
        const Eigen::MatrixXd alpha = in.gains->gains(std::vector<double>{5.0, 5.0});
        Beamformers w = random_beamformers(in.ch, 1.0, rng);
        w.pop_back();
        CHECK_THROWS_AS(check_dimensions(in.ch, alpha, w), std::invalid_argument);
        w = random_beamformers(in.ch, 1.0, rng);
        const Eigen::VectorXcd u = Eigen::VectorXcd::Ones(4);
        Eigen::VectorXd s = Eigen::VectorXd::Ones(4);
        s[2] = 0.0;
        CHECK_THROWS_AS(h_value(in.ch, alpha, w, u, s, 0.0, in.power, in.weights), std::domain_error);
    }
}
