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

#include "tiltbf/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tiltbf
{

void PatternParams::validate() const
{
    if (!std::isfinite(g_max_db))
        throw std::invalid_argument("PatternParams: g_max_db must be finite.");
    if (!(theta_3db_deg > 0.0) || !(phi_3db_deg > 0.0))
        throw std::invalid_argument("PatternParams: half-power beamwidths must be positive.");
    if (!(sll_el_db > 0.0) || !(sll_az_db > 0.0))
        throw std::invalid_argument("PatternParams: side-lobe levels must be positive.");
}

PatternParams PatternParams::normalized()
{
    PatternParams p;
    p.g_max_db = 0.0;
    return p;
}

double db_to_lin(double db)
{
    return std::pow(10.0, db / 10.0);
}

double lin_to_db(double lin)
{
    return 10.0 * std::log10(lin);
}

double wrap_angle_deg(double angle_deg)
{
    double a = std::fmod(angle_deg, 360.0);
    if (a <= -180.0)
        a += 360.0;
    else if (a > 180.0)
        a -= 360.0;
    return a;
}

static double azimuth_loss_db(const PatternParams &p, double boresight_deg, double phi_user_deg)
{
    const double dphi = wrap_angle_deg(boresight_deg - phi_user_deg) / p.phi_3db_deg;
    return std::min(12.0 * dphi * dphi, p.sll_az_db);
}

static void check_finite(double a, double b, double c, double d)
{
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(d))
        throw std::domain_error("Antenna gain: non-finite angle.");
}

double gain_db(const PatternParams &p, double tilt_deg, double theta_user_deg,
               double boresight_deg, double phi_user_deg)
{
    check_finite(tilt_deg, theta_user_deg, boresight_deg, phi_user_deg);
    if (tilt_deg < 0.0 || tilt_deg > 90.0)
        throw std::domain_error("Antenna gain: tilt must lie in [0, 90] degrees.");

    const double dtheta = (tilt_deg - theta_user_deg) / p.theta_3db_deg;
    const double el_loss = std::min(12.0 * dtheta * dtheta, p.sll_el_db);
    return p.g_max_db - azimuth_loss_db(p, boresight_deg, phi_user_deg) - el_loss;
}

double gain_lin(const PatternParams &p, double tilt_deg, double theta_user_deg,
                double boresight_deg, double phi_user_deg)
{
    return db_to_lin(gain_db(p, tilt_deg, theta_user_deg, boresight_deg, phi_user_deg));
}

double gain_db_azimuth_only(const PatternParams &p, double boresight_deg, double phi_user_deg)
{
    check_finite(0.0, 0.0, boresight_deg, phi_user_deg);
    return p.g_max_db - azimuth_loss_db(p, boresight_deg, phi_user_deg);
}

double link_gain_lin(const PatternParams &p, PatternMode mode, double tilt_deg,
                     double theta_user_deg, double boresight_deg, double phi_user_deg)
{
    if (mode == PatternMode::azimuth_only)
        return db_to_lin(gain_db_azimuth_only(p, boresight_deg, phi_user_deg));
    return gain_lin(p, tilt_deg, theta_user_deg, boresight_deg, phi_user_deg);
}

double concavity_halfwidth_deg(const PatternParams &p)
{
    if (!(p.theta_3db_deg > 0.0))
        throw std::invalid_argument("concavity_halfwidth_deg: theta_3db_deg must be positive.");
    return p.theta_3db_deg / std::sqrt(2.4 * std::log(10.0));
}

double clustering_threshold_deg(const PatternParams &p)
{
    return 2.0 * concavity_halfwidth_deg(p);
}

} // namespace tiltbf
