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

#include "tiltbf/harness.hpp"

#include <doctest.h>

#include <stdexcept>

#include <cmath>

using namespace tiltbf;

namespace
{

struct Fixture
{
    ExperimentConfig cfg;
    DropInstance inst;
    GainModel gains;
    Problem prob;

    Fixture(int drop, double p_dbm, PatternMode mode = PatternMode::full_3d)
        : inst(make_drop(cfg, drop, cfg.network.users_per_cell)), gains(cfg.pattern, mode, inst.drop, inst.layout),
          prob{inst.channels, gains, cfg.power_model(p_dbm), Weights::uniform(inst.channels.num_users())}
    {
    }
};

double eta_upper(const Problem &prob)
{
    return r_max(prob.channels, prob.power.p_max, db_to_lin(prob.gains.pattern().g_max_db)) / prob.static_power();
}

} // namespace

TEST_SUITE("dinkelbach")
{
    TEST_CASE("F is positive at zero, non-positive at the upper bound and strictly decreasing")
    {
        for (int drop = 0; drop < 4; ++drop)
        {
            const Fixture fx(drop, 40.0);
            const OuterConfig cfg;
            const Solution init = initial_solution(fx.prob, cfg.tilt.step_deg);
            const double top = eta_upper(fx.prob);
            CHECK(f_eta(0.0, fx.prob, cfg, init).f_value > 0.0);
            CHECK(f_eta(top, fx.prob, cfg, init).f_value <= 0.0);
            double prev = INFINITY;
            for (double frac : {0.02, 0.1, 0.2, 0.35, 0.5, 0.8})
            {
                const double f = f_eta(frac * top, fx.prob, cfg, init).f_value;
                CHECK(f < prev);
                prev = f;
            }
        }
    }

    TEST_CASE("bisection arithmetic, EE self-consistency and the root property")
    {
        for (int drop = 0; drop < 6; ++drop)
        {
            const Fixture fx(drop, drop % 2 ? 46.0 : 28.0, drop % 3 ? PatternMode::full_3d : PatternMode::azimuth_only);
            OuterConfig cfg;
            const OuterResult r = outer_solve(fx.prob, cfg);
            CHECK(r.eta_upper_init == doctest::Approx(eta_upper(fx.prob)).epsilon(1e-14));
            CHECK(r.iterations == static_cast<int>(std::ceil(std::log2(r.eta_upper_init / cfg.epsilon))));
            CHECK(r.eta_max - r.eta_min < cfg.epsilon);

            const Eigen::MatrixXd alpha = fx.gains.gains(r.solution.tilt_deg);
            const double ee = total_ee(fx.prob.channels, alpha, r.solution.w, fx.prob.power, fx.prob.weights);
            CHECK(std::abs(r.solution.ee - ee) <= 1e-9 * ee);
            CHECK(std::abs(r.solution.ee - r.eta_final) <= 2.0 * cfg.epsilon);
            CHECK(r.solution.ee >= r.initial_ee);
            for (int j = 0; j < fx.prob.num_cells(); ++j)
                CHECK(bs_power(r.solution.w, j) <= fx.prob.power.p_max * (1.0 + 1e-9));
            if (fx.gains.has_tilt())
                for (double t : r.solution.tilt_deg)
                    CHECK((t > 0.0 && t < 90.0));
            else
                CHECK(r.solution.tilt_deg.empty());
        }
    }

    TEST_CASE("the final bracket straddles the root")
    {
        for (int drop = 0; drop < 4; ++drop)
        {
            const Fixture fx(10 + drop, 40.0);
            const OuterConfig cfg;
            const OuterResult r = outer_solve(fx.prob, cfg);
            const double f2 = fx.prob.power.xi * transmit_power(r.solution.w) + fx.prob.static_power();
            const double noise = 1e-6 * f2;
            CHECK(f_eta(r.eta_min, fx.prob, cfg, r.solution).f_value >= -noise);
            CHECK(f_eta(r.eta_max, fx.prob, cfg, r.solution).f_value <= noise);
        }
    }

    TEST_CASE("warm start does not lose against a cold start")
    {
        for (int drop = 0; drop < 4; ++drop)
        {
            const Fixture fx(20 + drop, 40.0);
            const OuterConfig cfg;
            const Solution cold = initial_solution(fx.prob, cfg.tilt.step_deg);
            const OuterResult r = outer_solve(fx.prob, cfg);
            for (double scale : {0.9, 1.0, 1.1})
            {
                const double eta = scale * r.eta_final;
                const double f_cold = f_eta(eta, fx.prob, cfg, cold).f_value;
                const double f_warm = f_eta(eta, fx.prob, cfg, r.solution).f_value;
                CHECK(f_warm >= f_cold - 1e-6);
            }
        }
    }

    TEST_CASE("solutions are reproducible")
    {
        const Fixture a(3, 46.0), b(3, 46.0);
        const OuterResult ra = outer_solve(a.prob, OuterConfig{}), rb = outer_solve(b.prob, OuterConfig{});
        CHECK(ra.solution.ee == rb.solution.ee);
        CHECK(ra.solution.tilt_deg == rb.solution.tilt_deg);
        for (size_t j = 0; j < ra.solution.w.size(); ++j)
            CHECK(ra.solution.w[j] == rb.solution.w[j]);
    }

    TEST_CASE("a contradicted bracket triggers a restart")
    {
        // On this drop a point found late proves an early F <= 0 decision wrong
        const Fixture fx(3, 46.0);
        OuterConfig no_restart;
        no_restart.max_restarts = 0;
        const OuterResult a = outer_solve(fx.prob, no_restart);
        CHECK(a.restarts == 0);
        CHECK(a.solution.ee > a.eta_max);

        const OuterResult b = outer_solve(fx.prob, OuterConfig{});
        CHECK(b.restarts >= 1);
        CHECK(b.solution.ee <= b.eta_max);
        CHECK(b.solution.ee >= a.solution.ee);
        CHECK(std::abs(b.solution.ee - b.eta_final) <= 2.0 * OuterConfig{}.epsilon);
        CHECK(b.iterations == static_cast<int>(std::ceil(std::log2(b.eta_upper_init / OuterConfig{}.epsilon))));
    }

    TEST_CASE("golden outer solution")
    {
        const Fixture fx(0, 46.0);
        const OuterResult r = outer_solve(fx.prob, OuterConfig{});
        CHECK(r.solution.ee == doctest::Approx(0.965969087991).epsilon(1e-9));
        CHECK(r.iterations == 12);
    }

    TEST_CASE("configuration checks")
    {
        OuterConfig cfg;
        cfg.epsilon = 0.0;
        CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
        cfg = {};
        cfg.tilt.step_deg = 0.0;
        CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
        const Fixture fx(0, 40.0);
        CHECK_THROWS_AS(f_eta(-1.0, fx.prob, OuterConfig{}, initial_solution(fx.prob, 0.1)), std::invalid_argument);
    }
}
