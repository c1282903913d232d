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

namespace tiltbf
{

// Parametric sector-antenna pattern: separable azimuth and elevation parabolic
// losses (in dB) below a peak gain, each clamped at its side-lobe floor.
struct PatternParams
{
    double g_max_db = 18.0;      // Peak element gain in dB
    double theta_3db_deg = 6.0;  // Vertical half-power beamwidth
    double phi_3db_deg = 65.0;   // Horizontal half-power beamwidth
    double sll_el_db = 20.0;     // Vertical side-lobe floor (subtractive loss)
    double sll_az_db = 25.0;     // Horizontal side-lobe floor (subtractive loss)

    // Throws std::invalid_argument if any invariant is violated
    void validate() const;

    // Unit peak gain, as used for pattern illustrations
    static PatternParams normalized();
};

// full_3d applies both loss terms; azimuth_only drops the elevation term and
// models the conventional 2D antenna (no tilt variable).
enum class PatternMode
{
    full_3d,
    azimuth_only
};

double db_to_lin(double db);
double lin_to_db(double lin);

// Wraps an angle difference to (-180, 180]
double wrap_angle_deg(double angle_deg);

double gain_db(const PatternParams &p, double tilt_deg, double theta_user_deg,
               double boresight_deg, double phi_user_deg);

double gain_lin(const PatternParams &p, double tilt_deg, double theta_user_deg,
                double boresight_deg, double phi_user_deg);

// Horizontal term and peak gain only; the tilt does not enter.
double gain_db_azimuth_only(const PatternParams &p, double boresight_deg, double phi_user_deg);

// Dispatches on the pattern mode, returns a linear power ratio
double link_gain_lin(const PatternParams &p, PatternMode mode, double tilt_deg,
                     double theta_user_deg, double boresight_deg, double phi_user_deg);

// Half-width of the interval around a user's AoA in which the linear main-lobe
// vertical gain is concave: theta_3db / sqrt(2.4 ln 10).
double concavity_halfwidth_deg(const PatternParams &p);

// Default AoA clustering threshold, twice the concavity half-width
double clustering_threshold_deg(const PatternParams &p);

} // namespace tiltbf
