// SPDX-License-Identifier: Apache-2.0
//
// isac-mi: asymptotic mutual information and beamforming for MIMO ISAC
// Copyright (C) 2026 The isac-mi authors
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

#include "config.hpp"

#include "isac/errors.hpp"
#include "isac/scenario_io.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace isac::cli {

namespace {

using nlohmann::json;

void only_keys(const json& obj, const char* block, std::initializer_list<const char*> keys) {
    if (!obj.is_object())
        throw ConfigError(std::string("'") + block + "' must be an object");
    std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [k, v] : obj.items())
        if (!allowed.count(k))
            throw ConfigError(std::string("unknown key '") + k + "' in '" + block + "'");
}

template <typename T>
void read(const json& obj, const char* key, T& out) {
    if (!obj.contains(key))
        return;
    try {
        out = obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("bad value for '") + key + "'");
    }
}

template <typename T>
void read_opt(const json& obj, const char* key, std::optional<T>& out) {
    if (!obj.contains(key))
        return;
    T v{};
    read(obj, key, v);
    out = v;
}

double read_kappa(const json& v) {
    if (v.is_string()) {
        if (v.get<std::string>() == "inf")
            return kPureLosKappa;
        throw ConfigError("kappa must be a number or \"inf\"");
    }
    if (!v.is_number())
        throw ConfigError("kappa must be a number or \"inf\"");
    return v.get<double>();
}

void parse_scenario(const json& j, ScenarioBlock& s) {
    only_keys(j, "scenario",
              {"antennas", "n_t", "n_r", "n_u", "num_scatter", "m", "n_s", "kappa", "seed",
               "geometry", "file"});
    if (j.contains("antennas")) {
        int n = 0;
        read(j, "antennas", n);
        s.dims.n_t = s.dims.n_r = s.dims.n_u = s.dims.m = s.dims.n_s = n;
    }
    read(j, "n_t", s.dims.n_t);
    read(j, "n_r", s.dims.n_r);
    read(j, "n_u", s.dims.n_u);
    read(j, "num_scatter", s.dims.num_scatter);
    read(j, "m", s.dims.m);
    read(j, "n_s", s.dims.n_s);
    if (j.contains("kappa"))
        s.kappa = read_kappa(j.at("kappa"));
    read(j, "seed", s.seed);
    if (j.contains("file")) {
        std::string f;
        read(j, "file", f);
        s.file = f;
    }
    if (j.contains("geometry")) {
        const json& g = j.at("geometry");
        only_keys(g, "geometry",
                  {"comm_departure_azimuth", "comm_departure_elevation", "comm_arrival_azimuth",
                   "comm_arrival_elevation", "target_azimuth", "target_elevation",
                   "angular_spread"});
        auto& o = s.geometry;
        read(g, "comm_departure_azimuth", o.comm_departure_azimuth);
        read(g, "comm_departure_elevation", o.comm_departure_elevation);
        read(g, "comm_arrival_azimuth", o.comm_arrival_azimuth);
        read(g, "comm_arrival_elevation", o.comm_arrival_elevation);
        read(g, "target_azimuth", o.target_azimuth);
        read(g, "target_elevation", o.target_elevation);
        read(g, "angular_spread", o.angular_spread);
    }
}

void parse_run(const json& j, RunBlock& r) {
    only_keys(j, "run",
              {"experiment", "rho", "rho_grid", "antennas", "trials", "fast_trials",
               "gap_threshold", "p_t", "solver", "pga"});
    if (j.contains("experiment")) {
        std::string e;
        read(j, "experiment", e);
        r.experiment = experiment_from_string(e);
    }
    read(j, "rho", r.rho);
    read(j, "rho_grid", r.rho_grid);
    read(j, "antennas", r.antennas);
    read(j, "trials", r.trials);
    read(j, "fast_trials", r.fast_trials);
    read(j, "gap_threshold", r.gap_threshold);
    read_opt(j, "p_t", r.p_t);
    if (j.contains("solver")) {
        const json& s = j.at("solver");
        only_keys(s, "solver", {"tol", "max_iter", "damping"});
        read(s, "tol", r.solver.tol);
        read(s, "max_iter", r.solver.max_iter);
        read(s, "damping", r.solver.damping);
    }
    if (j.contains("pga")) {
        const json& p = j.at("pga");
        only_keys(p, "pga", {"epsilon", "max_iters", "step", "fixed_step", "seed"});
        read_opt(p, "epsilon", r.pga.epsilon);
        read_opt(p, "max_iters", r.pga.max_iters);
        if (p.contains("step")) {
            std::string step;
            read(p, "step", step);
            if (step == "backtracking")
                r.pga.step_rule = StepRule::backtracking;
            else if (step == "fixed")
                r.pga.step_rule = StepRule::fixed;
            else
                throw ConfigError("pga.step must be \"backtracking\" or \"fixed\"");
        }
        read(p, "fixed_step", r.pga.fixed_step);
        read(p, "seed", r.pga.seed);
    }
}

} // namespace

const char* to_string(ExperimentKind k) {
    switch (k) {
    case ExperimentKind::verify: return "verify";
    case ExperimentKind::convergence: return "convergence";
    case ExperimentKind::sweep: return "sweep";
    case ExperimentKind::tradeoff: return "tradeoff";
    case ExperimentKind::scenario_gen: return "scenario-gen";
    }
    return "?";
}

ExperimentKind experiment_from_string(const std::string& name) {
    for (auto k : {ExperimentKind::verify, ExperimentKind::convergence, ExperimentKind::sweep,
                   ExperimentKind::tradeoff, ExperimentKind::scenario_gen})
        if (name == to_string(k))
            return k;
    throw ConfigError("unknown experiment '" + name + "'");
}

ExperimentConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    ExperimentConfig cfg;
    only_keys(doc, "config", {"scenario", "noise", "run", "output"});
    if (doc.contains("scenario"))
        parse_scenario(doc.at("scenario"), cfg.scenario);
    if (doc.contains("noise")) {
        const json& n = doc.at("noise");
        only_keys(n, "noise", {"snr_db", "sensing_offset_db"});
        read(n, "snr_db", cfg.noise.snr_db);
        read(n, "sensing_offset_db", cfg.noise.sensing_offset_db);
    }
    if (doc.contains("run"))
        parse_run(doc.at("run"), cfg.run);
    if (doc.contains("output")) {
        const json& o = doc.at("output");
        only_keys(o, "output", {"dir", "gnuplot"});
        std::string dir = cfg.output.dir.string();
        read(o, "dir", dir);
        cfg.output.dir = dir;
        read(o, "gnuplot", cfg.output.gnuplot);
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot open config " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    auto cfg = parse_config(buf.str());
    // Relative scenario files resolve against the config's directory.
    if (cfg.scenario.file && cfg.scenario.file->is_relative())
        cfg.scenario.file = path.parent_path() / *cfg.scenario.file;
    return cfg;
}

void validate(const ExperimentConfig& cfg, ExperimentKind kind) {
    if (cfg.run.experiment && *cfg.run.experiment != kind)
        throw ConfigError(std::string("config is for experiment '") +
                          to_string(*cfg.run.experiment) + "', not '" + to_string(kind) + "'");
    try {
        if (!cfg.scenario.file)
            validate(cfg.scenario.dims);
        cfg.run.solver.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (!cfg.scenario.file && !(cfg.scenario.kappa > 0.0))
        throw ConfigError("kappa must be positive (use \"inf\" for pure LoS)");
    auto finite = [](double v) { return std::isfinite(v); };
    for (double s : cfg.noise.snr_db)
        if (!finite(s))
            throw ConfigError("SNR values must be finite");
    if (!finite(cfg.noise.sensing_offset_db))
        throw ConfigError("sensing offset must be finite");
    auto check_rho = [](double r) {
        if (!(r >= 0.0 && r <= 1.0))
            throw ConfigError("rho values must lie in [0, 1]");
    };
    check_rho(cfg.run.rho);
    if (cfg.run.p_t && !(*cfg.run.p_t > 0.0))
        throw ConfigError("p_t must be positive");
    if (cfg.run.pga.epsilon && !(*cfg.run.pga.epsilon > 0.0))
        throw ConfigError("pga.epsilon must be positive");
    if (cfg.run.pga.max_iters && *cfg.run.pga.max_iters < 0)
        throw ConfigError("pga.max_iters must be nonnegative");
    if (cfg.run.pga.step_rule == StepRule::fixed && !(cfg.run.pga.fixed_step > 0.0))
        throw ConfigError("pga.fixed_step must be positive");

    switch (kind) {
    case ExperimentKind::verify:
        if (cfg.noise.snr_db.empty())
            throw ConfigError("noise.snr_db must not be empty");
        if (cfg.mc_trials() < 2)
            throw ConfigError("Monte Carlo needs at least 2 trials");
        if (!(cfg.run.gap_threshold > 0.0))
            throw ConfigError("gap_threshold must be positive");
        break;
    case ExperimentKind::sweep:
        if (cfg.noise.snr_db.empty())
            throw ConfigError("noise.snr_db must not be empty");
        break;
    case ExperimentKind::convergence:
        if (cfg.noise.snr_db.empty())
            throw ConfigError("noise.snr_db must not be empty");
        if (cfg.scenario.file)
            throw ConfigError("convergence regenerates scenarios and cannot use scenario.file");
        if (cfg.run.antennas.empty())
            throw ConfigError("run.antennas must not be empty");
        for (int n : cfg.run.antennas)
            if (n < 1)
                throw ConfigError("antenna counts must be positive");
        break;
    case ExperimentKind::tradeoff:
        if (cfg.noise.snr_db.empty())
            throw ConfigError("noise.snr_db must not be empty");
        if (cfg.run.rho_grid.empty())
            throw ConfigError("run.rho_grid must not be empty");
        for (double r : cfg.run.rho_grid)
            check_rho(r);
        break;
    case ExperimentKind::scenario_gen:
        if (cfg.scenario.file)
            throw ConfigError("scenario-gen needs generator parameters, not scenario.file");
        break;
    }
}

ScenarioStats build_scenario(const ExperimentConfig& cfg) {
    if (cfg.scenario.file) {
        try {
            return load_scenario(*cfg.scenario.file);
        } catch (const std::exception& e) {
            throw ConfigError(e.what());
        }
    }
    return generate_scenario(cfg.scenario.dims, cfg.scenario.kappa, cfg.scenario.seed,
                             cfg.scenario.geometry);
}

ScenarioStats build_scenario(const ExperimentConfig& cfg, int n) {
    SystemDims d = cfg.scenario.dims;
    d.n_t = d.n_r = d.n_u = d.m = d.n_s = n;
    return generate_scenario(d, cfg.scenario.kappa, cfg.scenario.seed, cfg.scenario.geometry);
}

} // namespace isac::cli
