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

#include "tiltbf/scenario.hpp"
#include "tiltbf/random.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace tiltbf
{

static constexpr double deg = std::numbers::pi / 180.0;

static Eigen::Vector2d unit(double angle_deg)
{
    return {std::cos(angle_deg * deg), std::sin(angle_deg * deg)};
}

void NetworkConfig::validate() const
{
    if (num_cells < 1 || users_per_cell < 1 || antennas < 1)
        throw std::invalid_argument("NetworkConfig: L, K and M must be at least 1.");
    if (!(bs_height_m > ue_height_m) || !(ue_height_m >= 0.0))
        throw std::invalid_argument("NetworkConfig: requires bs_height_m > ue_height_m >= 0.");
    if (!(min_user_distance_m > 0.0) || !(min_user_distance_m < cell_radius_m))
        throw std::invalid_argument("NetworkConfig: requires 0 < min_user_distance_m < cell_radius_m.");
    if (!boresights_deg.empty() && static_cast<int>(boresights_deg.size()) != num_cells)
        throw std::invalid_argument("NetworkConfig: boresights_deg must list one angle per cell.");
    for (double b : boresights_deg)
        if (!std::isfinite(b))
            throw std::invalid_argument("NetworkConfig: non-finite boresight.");
}

Layout build_layout(const NetworkConfig &cfg)
{
    cfg.validate();
    const int L = cfg.num_cells;
    if (L > 7)
        throw std::invalid_argument("build_layout: only 1 <= L <= 7 layouts are supported.");

    const double R = cfg.cell_radius_m;
    Layout layout;
    layout.cell_radius_m = R;

    if (L == 3)
    {
        // Three pointy-top hexagons sharing a vertex at the origin. BS i sits on
        // the cell vertex at R * u(30 + 120 i), so sites form an equilateral
        // triangle of side sqrt(3) R.
        for (int i = 0; i < 3; ++i)
        {
            layout.cell_center_xy.push_back(R * unit(90.0 + 120.0 * i));
            layout.bs_xy.push_back(R * unit(30.0 + 120.0 * i));
            layout.hex_vertex_angle_deg.push_back(30.0);
        }
    }
    else
    {
        // Flat-top hexagons: the centre cell plus the first ring. Each BS sits on
        // the west vertex of its cell; the grid is shifted so BS 0 is at the origin.
        std::vector<Eigen::Vector2d> centers{Eigen::Vector2d::Zero()};
        for (int k = 0; k < 6; ++k)
            centers.push_back(std::sqrt(3.0) * R * unit(30.0 + 60.0 * k));
        const Eigen::Vector2d shift(R, 0.0);
        for (int i = 0; i < L; ++i)
        {
            layout.cell_center_xy.push_back(centers[i] + shift);
            layout.bs_xy.push_back(centers[i] + shift - Eigen::Vector2d(R, 0.0));
            layout.hex_vertex_angle_deg.push_back(0.0);
        }
    }

    for (int i = 0; i < L; ++i)
    {
        const Eigen::Vector2d d = layout.cell_center_xy[i] - layout.bs_xy[i];
        double b = std::atan2(d.y(), d.x()) / deg;
        if (b < 0.0)
            b += 360.0;
        layout.boresight_deg.push_back(cfg.boresights_deg.empty() ? b : cfg.boresights_deg[i]);
    }
    return layout;
}

bool inside_cell(const Layout &layout, int cell, const Eigen::Vector2d &xy)
{
    const double R = layout.cell_radius_m;
    const double rot = -layout.hex_vertex_angle_deg[cell] * deg;
    const Eigen::Vector2d d = xy - layout.cell_center_xy[cell];
    // Rotate into the flat-top frame (first vertex on the +x axis)
    const double x = std::abs(std::cos(rot) * d.x() - std::sin(rot) * d.y());
    const double y = std::abs(std::sin(rot) * d.x() + std::cos(rot) * d.y());
    const double s3 = std::sqrt(3.0);
    return y <= 0.5 * s3 * R && s3 * x + y <= s3 * R;
}

double elevation_aoa_deg(double bs_height_m, double ue_height_m, double ground_distance_m)
{
    if (!(ground_distance_m > 0.0))
        throw std::domain_error("elevation_aoa_deg: ground distance must be positive.");
    if (!(bs_height_m > ue_height_m))
        throw std::domain_error("elevation_aoa_deg: BS must be above the UE.");
    return std::atan((bs_height_m - ue_height_m) / ground_distance_m) / deg;
}

Drop drop_users(const NetworkConfig &cfg, const Layout &layout, std::uint64_t seed)
{
    cfg.validate();
    const int L = cfg.num_cells, K = cfg.users_per_cell;
    if (layout.num_cells() != L)
        throw std::invalid_argument("drop_users: layout does not match the configuration.");

    Drop drop;
    drop.num_cells = L;
    drop.users_per_cell = K;
    drop.user_xy.resize(static_cast<size_t>(L * K));

    const double R = layout.cell_radius_m;
    std::uniform_real_distribution<double> unif(-R, R);
    for (int j = 0; j < L; ++j)
        for (int m = 0; m < K; ++m)
        {
            Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(j), static_cast<std::uint64_t>(m)}));
            Eigen::Vector2d p;
            while (true)
            {
                const Eigen::Vector2d off(unif(rng), unif(rng));
                if (off.squaredNorm() > R * R)
                    continue;
                p = layout.cell_center_xy[j] + off;
                if (!inside_cell(layout, j, p))
                    continue;
                if ((p - layout.bs_xy[j]).norm() < cfg.min_user_distance_m)
                    continue;
                break;
            }
            drop.user_xy[drop.user_index(j, m)] = p;
        }

    const int U = L * K;
    drop.elevation_aoa_deg.resize(L, U);
    drop.azimuth_aoa_deg.resize(L, U);
    drop.distance_m.resize(L, U);
    for (int i = 0; i < L; ++i)
        for (int u = 0; u < U; ++u)
        {
            const Eigen::Vector2d d = drop.user_xy[u] - layout.bs_xy[i];
            // Guard against a foreign user standing on top of another site
            const double dist = std::max(d.norm(), 1e-3);
            drop.distance_m(i, u) = dist;
            drop.elevation_aoa_deg(i, u) = elevation_aoa_deg(cfg.bs_height_m, cfg.ue_height_m, dist);
            drop.azimuth_aoa_deg(i, u) = std::atan2(d.y(), d.x()) / deg;
        }
    return drop;
}

void write_drop(std::ostream &os, const Drop &drop)
{
    const int K = drop.users_per_cell;
    os << std::setprecision(17);
    os << "drop " << drop.num_cells << ' ' << K << '\n';
    for (int u = 0; u < drop.num_users(); ++u)
        os << "user " << u / K << ' ' << u % K << ' ' << drop.user_xy[u].x() << ' '
           << drop.user_xy[u].y() << '\n';
    for (int i = 0; i < drop.num_cells; ++i)
        for (int u = 0; u < drop.num_users(); ++u)
            os << "link " << i << ' ' << u / K << ' ' << u % K << ' ' << drop.distance_m(i, u) << ' '
               << drop.elevation_aoa_deg(i, u) << ' ' << drop.azimuth_aoa_deg(i, u) << '\n';
}

} // namespace tiltbf
