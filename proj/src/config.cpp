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

#include "tiltbf/config.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace tiltbf
{

using nlohmann::json;

std::string_view mode_name(Mode m)
{
    switch (m)
    {
    case Mode::cluster_3d:
        return "3d_cluster";
    case Mode::exhaustive_3d:
        return "3d_exhaustive";
    case Mode::baseline_2d:
        return "2d_baseline";
    }
    return "?";
}

std::optional<Mode> parse_mode(std::string_view name)
{
    for (Mode m : {Mode::cluster_3d, Mode::exhaustive_3d, Mode::baseline_2d})
        if (mode_name(m) == name)
            return m;
    return std::nullopt;
}

void ExperimentConfig::validate() const
{
    try
    {
        network.validate();
        if (network.num_cells > 7)
            throw ConfigError("network.num_cells must not exceed 7.");
        fading.validate();
        pattern.validate();
        outer.validate();
    }
    catch (const std::invalid_argument &e)
    {
        throw ConfigError(e.what());
    }
    if (num_drops < 1)
        throw ConfigError("num_drops must be at least 1.");
    if (p_max_dbm.empty())
        throw ConfigError("p_max_dbm must list at least one value.");
    for (double p : p_max_dbm)
        if (!(p >= 0.0 && p <= 60.0))
            throw ConfigError("p_max_dbm values must lie in [0, 60].");
    for (int k : users_per_cell_sweep)
        if (k < 1)
            throw ConfigError("users_per_cell_sweep values must be at least 1.");
    if (!std::isfinite(p_c_dbm) || !std::isfinite(p_0_dbm) || !(xi > 0.0))
        throw ConfigError("p_c_dbm and p_0_dbm must be finite and xi positive.");
    if (modes.empty())
        throw ConfigError("modes must list at least one mode.");
    if (std::set<Mode>(modes.begin(), modes.end()).size() != modes.size())
        throw ConfigError("modes must not repeat.");
    if (!weights.empty())
    {
        if (!users_per_cell_sweep.empty())
            throw ConfigError("per-user weights cannot be combined with users_per_cell_sweep.");
        if (static_cast<int>(weights.size()) != network.num_cells * network.users_per_cell)
            throw ConfigError("weights must list one value per user (L * K).");
        for (double b : weights)
            if (!(b > 0.0))
                throw ConfigError("weights must be positive.");
    }
    if (workers < 0)
        throw ConfigError("workers must be non-negative.");
    if (!(max_nonconverged_fraction >= 0.0 && max_nonconverged_fraction <= 1.0))
        throw ConfigError("max_nonconverged_fraction must lie in [0, 1].");
}

std::vector<int> ExperimentConfig::k_values() const
{
    return users_per_cell_sweep.empty() ? std::vector<int>{network.users_per_cell} : users_per_cell_sweep;
}

PowerModel ExperimentConfig::power_model(double p) const
{
    return {PowerModel::dbm_to_watts(p), PowerModel::dbm_to_watts(p_c_dbm), PowerModel::dbm_to_watts(p_0_dbm), xi};
}

Weights ExperimentConfig::weights_for(int users) const
{
    if (weights.empty())
        return Weights::uniform(users);
    return {Eigen::Map<const Eigen::VectorXd>(weights.data(), static_cast<Eigen::Index>(weights.size()))};
}

ExperimentConfig paper_preset(int antennas)
{
    ExperimentConfig cfg;
    cfg.network.antennas = antennas;
    cfg.num_drops = 2500;
    return cfg;
}

namespace
{

json to_json(const ExperimentConfig &c)
{
    json j;
    const auto &n = c.network;
    j["network"] = {{"num_cells", n.num_cells},
                    {"users_per_cell", n.users_per_cell},
                    {"antennas", n.antennas},
                    {"cell_radius_m", n.cell_radius_m},
                    {"bs_height_m", n.bs_height_m},
                    {"ue_height_m", n.ue_height_m},
                    {"min_user_distance_m", n.min_user_distance_m},
                    {"boresights_deg", n.boresights_deg}};
    const auto &f = c.fading;
    j["fading"] = {{"pathloss_exponent", f.pathloss_exponent},
                   {"shadow_sigma_db", f.shadow_sigma_db},
                   {"reference_distance_m", f.reference_distance_m},
                   {"reference_loss_db", f.reference_loss_db},
                   {"noise_power", f.noise_power}};
    const auto &p = c.pattern;
    j["pattern"] = {{"g_max_db", p.g_max_db},
                    {"theta_3db_deg", p.theta_3db_deg},
                    {"phi_3db_deg", p.phi_3db_deg},
                    {"sll_el_db", p.sll_el_db},
                    {"sll_az_db", p.sll_az_db}};
    j["power"] = {{"p_c_dbm", c.p_c_dbm}, {"p_0_dbm", c.p_0_dbm}, {"xi", c.xi}};
    const auto &o = c.outer;
    j["outer"] = {{"epsilon", o.epsilon},
                  {"delta", o.delta},
                  {"tilt_step_deg", o.tilt.step_deg},
                  {"max_outer_iters", o.max_outer_iters},
                  {"max_inner_iters", o.max_inner_iters},
                  {"max_tilt_rounds", o.max_tilt_rounds},
                  {"zero_tol", o.zero_tol},
                  {"max_restarts", o.max_restarts},
                  {"scan_all_clusters", o.tilt.scan_all_clusters},
                  {"tilt_eval_sweeps", o.tilt.eval_sweeps},
                  {"clustering_threshold_deg", o.tilt.threshold_deg ? json(*o.tilt.threshold_deg) : json(nullptr)}};
    j["p_max_dbm"] = c.p_max_dbm;
    j["users_per_cell_sweep"] = c.users_per_cell_sweep;
    j["weights"] = c.weights;
    j["num_drops"] = c.num_drops;
    j["base_seed"] = c.base_seed;
    std::vector<std::string> modes;
    for (Mode m : c.modes)
        modes.emplace_back(mode_name(m));
    j["modes"] = modes;
    j["workers"] = c.workers;
    j["max_nonconverged_fraction"] = c.max_nonconverged_fraction;
    return j;
}

void check_keys(const json &j, std::string_view where, std::initializer_list<std::string_view> allowed)
{
    if (!j.is_object())
        throw ConfigError(std::string(where) + " must be an object.");
    for (const auto &[key, value] : j.items())
    {
        bool ok = false;
        for (auto a : allowed)
            ok = ok || key == a;
        if (!ok)
            throw ConfigError("unknown key '" + key + "' in " + std::string(where) + ".");
    }
}

template <class T>
void read(const json &j, const char *key, T &out)
{
    if (j.contains(key))
        out = j.at(key).get<T>();
}

ExperimentConfig from_json(const json &j)
{
    ExperimentConfig c;
    check_keys(j, "config",
               {"network", "fading", "pattern", "power", "outer", "p_max_dbm", "users_per_cell_sweep", "weights",
                "num_drops", "base_seed", "modes", "workers", "max_nonconverged_fraction"});
    if (j.contains("network"))
    {
        const json &n = j["network"];
        check_keys(n, "network",
                   {"num_cells", "users_per_cell", "antennas", "cell_radius_m", "bs_height_m", "ue_height_m",
                    "min_user_distance_m", "boresights_deg"});
        read(n, "num_cells", c.network.num_cells);
        read(n, "users_per_cell", c.network.users_per_cell);
        read(n, "antennas", c.network.antennas);
        read(n, "cell_radius_m", c.network.cell_radius_m);
        read(n, "bs_height_m", c.network.bs_height_m);
        read(n, "ue_height_m", c.network.ue_height_m);
        read(n, "min_user_distance_m", c.network.min_user_distance_m);
        read(n, "boresights_deg", c.network.boresights_deg);
    }
    if (j.contains("fading"))
    {
        const json &f = j["fading"];
        check_keys(f, "fading",
                   {"pathloss_exponent", "shadow_sigma_db", "reference_distance_m", "reference_loss_db",
                    "noise_power"});
        read(f, "pathloss_exponent", c.fading.pathloss_exponent);
        read(f, "shadow_sigma_db", c.fading.shadow_sigma_db);
        read(f, "reference_distance_m", c.fading.reference_distance_m);
        read(f, "reference_loss_db", c.fading.reference_loss_db);
        read(f, "noise_power", c.fading.noise_power);
    }
    if (j.contains("pattern"))
    {
        const json &p = j["pattern"];
        check_keys(p, "pattern", {"g_max_db", "theta_3db_deg", "phi_3db_deg", "sll_el_db", "sll_az_db"});
        read(p, "g_max_db", c.pattern.g_max_db);
        read(p, "theta_3db_deg", c.pattern.theta_3db_deg);
        read(p, "phi_3db_deg", c.pattern.phi_3db_deg);
        read(p, "sll_el_db", c.pattern.sll_el_db);
        read(p, "sll_az_db", c.pattern.sll_az_db);
    }
    if (j.contains("power"))
    {
        const json &p = j["power"];
        check_keys(p, "power", {"p_c_dbm", "p_0_dbm", "xi"});
        read(p, "p_c_dbm", c.p_c_dbm);
        read(p, "p_0_dbm", c.p_0_dbm);
        read(p, "xi", c.xi);
    }
    if (j.contains("outer"))
    {
        const json &o = j["outer"];
        check_keys(o, "outer",
                   {"epsilon", "delta", "tilt_step_deg", "max_outer_iters", "max_inner_iters", "max_tilt_rounds",
                    "zero_tol", "max_restarts", "scan_all_clusters", "tilt_eval_sweeps",
                    "clustering_threshold_deg"});
        read(o, "epsilon", c.outer.epsilon);
        read(o, "delta", c.outer.delta);
        read(o, "tilt_step_deg", c.outer.tilt.step_deg);
        read(o, "max_outer_iters", c.outer.max_outer_iters);
        read(o, "max_inner_iters", c.outer.max_inner_iters);
        read(o, "max_tilt_rounds", c.outer.max_tilt_rounds);
        read(o, "zero_tol", c.outer.zero_tol);
        read(o, "max_restarts", c.outer.max_restarts);
        read(o, "scan_all_clusters", c.outer.tilt.scan_all_clusters);
        read(o, "tilt_eval_sweeps", c.outer.tilt.eval_sweeps);
        if (o.contains("clustering_threshold_deg") && !o["clustering_threshold_deg"].is_null())
            c.outer.tilt.threshold_deg = o["clustering_threshold_deg"].get<double>();
    }
    read(j, "p_max_dbm", c.p_max_dbm);
    read(j, "users_per_cell_sweep", c.users_per_cell_sweep);
    read(j, "weights", c.weights);
    read(j, "num_drops", c.num_drops);
    read(j, "base_seed", c.base_seed);
    if (j.contains("modes"))
    {
        c.modes.clear();
        for (const auto &m : j["modes"])
        {
            const auto parsed = parse_mode(m.get<std::string>());
            if (!parsed)
                throw ConfigError("unknown mode '" + m.get<std::string>() + "'.");
            c.modes.push_back(*parsed);
        }
    }
    read(j, "workers", c.workers);
    read(j, "max_nonconverged_fraction", c.max_nonconverged_fraction);
    return c;
}

} // namespace

std::string config_to_json(const ExperimentConfig &cfg)
{
    return to_json(cfg).dump(2);
}

ExperimentConfig config_from_json(std::string_view text)
{
    ExperimentConfig c;
    try
    {
        c = from_json(json::parse(text));
    }
    catch (const json::exception &e)
    {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'.");
    std::stringstream ss;
    ss << in.rdbuf();
    return config_from_json(ss.str());
}

} // namespace tiltbf
