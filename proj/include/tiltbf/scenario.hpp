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

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace tiltbf
{

struct NetworkConfig
{
    int num_cells = 3;          // L
    int users_per_cell = 2;     // K
    int antennas = 4;           // M
    double cell_radius_m = 500.0;
    double bs_height_m = 32.0;
    double ue_height_m = 1.5;
    double min_user_distance_m = 35.0;
    std::vector<double> boresights_deg; // Empty: layout default

    void validate() const;
};

// Site geometry. Every BS sits on a vertex of its own hexagonal cell and its
// boresight points at the cell centroid.
struct Layout
{
    std::vector<Eigen::Vector2d> bs_xy;
    std::vector<Eigen::Vector2d> cell_center_xy;
    std::vector<double> boresight_deg;
    std::vector<double> hex_vertex_angle_deg; // Direction of the first hexagon vertex
    double cell_radius_m = 0.0;

    int num_cells() const { return static_cast<int>(bs_xy.size()); }
};

// One random user placement. Link matrices are indexed (BS i, user u) with
// u = j * K + m for user m of cell j.
struct Drop
{
    int num_cells = 0;
    int users_per_cell = 0;
    std::vector<Eigen::Vector2d> user_xy;
    Eigen::MatrixXd elevation_aoa_deg; // Downward from the horizon, (0, 90)
    Eigen::MatrixXd azimuth_aoa_deg;   // Direction of the user seen from the BS
    Eigen::MatrixXd distance_m;        // 2D ground distance

    int num_users() const { return num_cells * users_per_cell; }
    int user_index(int cell, int user) const { return cell * users_per_cell + user; }
    double serving_aoa_deg(int cell, int user) const
    {
        return elevation_aoa_deg(cell, user_index(cell, user));
    }
};

Layout build_layout(const NetworkConfig &cfg);

bool inside_cell(const Layout &layout, int cell, const Eigen::Vector2d &xy);

// Users are drawn uniformly over the hexagon minus the exclusion disc around the
// serving BS. Each (cell, user) pair uses its own derived generator so the first
// K users of a drop do not depend on K.
Drop drop_users(const NetworkConfig &cfg, const Layout &layout, std::uint64_t seed);

double elevation_aoa_deg(double bs_height_m, double ue_height_m, double ground_distance_m);

// Text record: header line "drop L K", then one line per user
// "user j m x y", then one line per link "link i j m distance elevation azimuth".
void write_drop(std::ostream &os, const Drop &drop);

} // namespace tiltbf
