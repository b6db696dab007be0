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

#include "experiments.hpp"

#include "isac/mi.hpp"
#include "isac/montecarlo.hpp"
#include "isac/optimizer.hpp"
#include "isac/parallel.hpp"
#include "isac/scenario_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace isac::cli {

namespace {

std::string num(double v) { return format_number(v); }
std::string bits(double nats) { return format_number(nats_to_bits(nats)); }

const char* stop_name(PgaStop s) {
    switch (s) {
    case PgaStop::tolerance: return "tolerance";
    case PgaStop::max_iterations: return "max_iterations";
    case PgaStop::stationary: return "stationary";
    case PgaStop::step_underflow: return "step_underflow";
    }
    return "?";
}

NoiseConfig noise_at(const ExperimentConfig& cfg, double snr_db) {
    return NoiseConfig{snr_db, cfg.noise.sensing_offset_db};
}

double power_budget(const ExperimentConfig& cfg, const SystemDims& dims) {
    return cfg.run.p_t ? *cfg.run.p_t : static_cast<double>(dims.n_t);
}

PgaOptions pga_options(const ExperimentConfig& cfg, double eps_default, int iters_default) {
    PgaOptions o;
    o.epsilon = cfg.run.pga.epsilon.value_or(eps_default);
    o.max_outer_iters = cfg.run.pga.max_iters.value_or(iters_default);
    o.step_rule = cfg.run.pga.step_rule;
    o.fixed_step = cfg.run.pga.fixed_step;
    o.seed = cfg.run.pga.seed;
    o.solver = cfg.run.solver;
    return o;
}

PgaResult run_pga(const ScenarioStats& stats, const NoiseConfig& noise, double rho, double p_t,
                  const PgaOptions& opts, const std::string& where) {
    try {
        return pga(stats, noise, rho, p_t, opts);
    } catch (const PgaAborted& e) {
        throw StageError("pga " + where, e.what());
    } catch (const NumericalError& e) {
        throw StageError("pga " + where, e.what());
    }
}

// Whitespace-separated copy of a CSV with a commented header. Rows whose
// value in column `group` changes start a new gnuplot data block.
std::string csv_to_dat(const std::string& csv, int group = -1) {
    std::istringstream in(csv);
    std::string line, out, prev_key;
    bool header = true;
    while (std::getline(in, line)) {
        std::string key;
        if (!header && group >= 0) {
            std::istringstream ls(line);
            for (int c = 0; c <= group; ++c)
                std::getline(ls, key, ',');
            if (!prev_key.empty() && key != prev_key)
                out += "\n\n";
            prev_key = key;
        }
        for (char& ch : line)
            if (ch == ',')
                ch = ' ';
        out += (header ? "# " : "") + line + '\n';
        header = false;
    }
    return out;
}

} // namespace

ExperimentResult run_verify(const ExperimentConfig& cfg) {
    const ScenarioStats stats = build_scenario(cfg);
    const Beamformer bf = default_beamformer(stats.dims, power_budget(cfg, stats.dims));
    const double rho = cfg.run.rho;
    const double thr = cfg.run.gap_threshold;

    ExperimentResult r;
    r.name = "verify";
    r.csv = "snr_db,rho,i_s_bits,mc_i_s_bits,se_i_s_bits,gap_s,i_c_bits,mc_i_c_bits,"
            "se_i_c_bits,gap_c,residual_s,residual_c,iters_s,iters_c,status\n";
    McOptions mc;
    mc.trials = cfg.mc_trials();

    auto gap = [](double cf, double ref) {
        const double d = std::abs(cf - ref);
        return ref != 0.0 ? d / std::abs(ref) : d;
    };

    for (double snr : cfg.noise.snr_db) {
        const NoiseConfig noise = noise_at(cfg, snr);
        std::string status = "ok";
        MiReport cf;
        McEstimate ms, mcomm;
        try {
            cf = weighted_mi(stats, bf, noise, rho, cfg.run.solver);
        } catch (const NumericalError& e) {
            status = "solver_failed";
            r.messages.push_back("snr " + num(snr) + ": " + e.what());
        }
        if (status == "ok") {
            try {
                ms = estimate(stats, bf, noise, McQuantity::mi_s, mc);
                mcomm = estimate(stats, bf, noise, McQuantity::mi_c, mc);
            } catch (const NumericalError& e) {
                status = "mc_failed";
                r.messages.push_back("snr " + num(snr) + ": " + e.what());
            }
        }
        std::string row = num(snr) + ',' + num(rho) + ',';
        if (status == "ok") {
            const double gs = gap(cf.i_s, ms.mean);
            const double gc = gap(cf.i_c, mcomm.mean);
            if (!(gs < thr) || !(gc < thr)) {
                status = "gap_exceeded";
                r.messages.push_back("snr " + num(snr) + ": relative gap above " + num(thr));
            }
            row += bits(cf.i_s) + ',' + bits(ms.mean) + ',' + bits(ms.std_error) + ',' + num(gs) +
                   ',' + bits(cf.i_c) + ',' + bits(mcomm.mean) + ',' + bits(mcomm.std_error) +
                   ',' + num(gc) + ',' + num(cf.residual_s) + ',' + num(cf.residual_c) + ',' +
                   std::to_string(cf.iters_s) + ',' + std::to_string(cf.iters_c);
        } else {
            row += "nan,nan,nan,nan,nan,nan,nan,nan,nan,nan,0,0";
        }
        r.csv += row + ',' + status + '\n';
        if (status != "ok")
            r.passed = false;
    }
    r.dat = csv_to_dat(r.csv);
    return r;
}

ExperimentResult run_convergence(const ExperimentConfig& cfg) {
    struct Job {
        int n;
        double snr;
    };
    std::vector<Job> jobs;
    for (int n : cfg.run.antennas)
        for (double snr : cfg.noise.snr_db)
            jobs.push_back({n, snr});
    const PgaOptions opts = pga_options(cfg, 1e-4, 50);

    std::vector<PgaResult> results(jobs.size());
    parallel_for(jobs.size(), [&](std::size_t i) {
        const ScenarioStats stats = build_scenario(cfg, jobs[i].n);
        results[i] = run_pga(stats, noise_at(cfg, jobs[i].snr), cfg.run.rho,
                             power_budget(cfg, stats.dims), opts,
                             "(n=" + std::to_string(jobs[i].n) + ", snr=" + num(jobs[i].snr) + ")");
    });

    ExperimentResult r;
    r.name = "convergence";
    r.csv = "n,snr_db,iter,weighted_bits,step,grad_norm\n";
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        for (const auto& row : results[i].trace.rows)
            r.csv += std::to_string(jobs[i].n) + ',' + num(jobs[i].snr) + ',' +
                     std::to_string(row.iter) + ',' + bits(row.weighted) + ',' + num(row.step) +
                     ',' + num(row.grad_norm) + '\n';
        r.messages.push_back("n=" + std::to_string(jobs[i].n) + " snr=" + num(jobs[i].snr) +
                             ": " + std::to_string(results[i].trace.rows.size() - 1) +
                             " iterations, final " + bits(results[i].report.weighted) + " bits (" +
                             stop_name(results[i].stop) + ")");
    }
    r.dat = csv_to_dat(r.csv, 0);
    return r;
}

ExperimentResult run_sweep(const ExperimentConfig& cfg) {
    const ScenarioStats stats = build_scenario(cfg);
    const double p_t = power_budget(cfg, stats.dims);
    const Beamformer base = default_beamformer(stats.dims, p_t);
    const double rho = cfg.run.rho;
    const PgaOptions opts = pga_options(cfg, 1e-4, 50);
    const auto& grid = cfg.noise.snr_db;

    std::vector<MiReport> baseline(grid.size());
    std::vector<PgaResult> optimized(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        const NoiseConfig noise = noise_at(cfg, grid[i]);
        try {
            baseline[i] = weighted_mi(stats, base, noise, rho, cfg.run.solver);
        } catch (const NumericalError& e) {
            throw StageError("baseline (snr=" + num(grid[i]) + ")", e.what());
        }
        optimized[i] = run_pga(stats, noise, rho, p_t, opts, "(snr=" + num(grid[i]) + ")");
    });

    ExperimentResult r;
    r.name = "sweep";
    r.csv = "snr_db,rho,baseline_bits,optimized_bits,baseline_i_s_bits,baseline_i_c_bits,"
            "optimized_i_s_bits,optimized_i_c_bits,iterations,stop\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const MiReport& b = baseline[i];
        const MiReport& o = optimized[i].report;
        r.csv += num(grid[i]) + ',' + num(rho) + ',' + bits(b.weighted) + ',' + bits(o.weighted) +
                 ',' + bits(b.i_s) + ',' + bits(b.i_c) + ',' + bits(o.i_s) + ',' + bits(o.i_c) +
                 ',' + std::to_string(optimized[i].trace.rows.size() - 1) + ',' +
                 stop_name(optimized[i].stop) + '\n';
        if (o.weighted < b.weighted - 1e-9) {
            r.passed = false;
            r.messages.push_back("snr " + num(grid[i]) + ": optimized below baseline");
        }
    }
    r.dat = csv_to_dat(r.csv);
    return r;
}

ExperimentResult run_tradeoff(const ExperimentConfig& cfg) {
    const ScenarioStats stats = build_scenario(cfg);
    const double p_t = power_budget(cfg, stats.dims);
    const PgaOptions opts = pga_options(cfg, 1e-8, 200);
    const auto& snrs = cfg.noise.snr_db;
    const auto& rhos = cfg.run.rho_grid;

    std::vector<PgaResult> res(snrs.size() * rhos.size());
    parallel_for(res.size(), [&](std::size_t k) {
        const double snr = snrs[k / rhos.size()];
        const double rho = rhos[k % rhos.size()];
        res[k] = run_pga(stats, noise_at(cfg, snr), rho, p_t, opts,
                         "(snr=" + num(snr) + ", rho=" + num(rho) + ")");
    });

    ExperimentResult r;
    r.name = "tradeoff";
    r.csv = "snr_db,rho,i_s_bits,i_c_bits,weighted_bits,iterations,stop\n";
    constexpr double slack = 1e-6;
    for (std::size_t si = 0; si < snrs.size(); ++si) {
        for (std::size_t ri = 0; ri < rhos.size(); ++ri) {
            const PgaResult& p = res[si * rhos.size() + ri];
            r.csv += num(snrs[si]) + ',' + num(rhos[ri]) + ',' + bits(p.report.i_s) + ',' +
                     bits(p.report.i_c) + ',' + bits(p.report.weighted) + ',' +
                     std::to_string(p.trace.rows.size() - 1) + ',' + stop_name(p.stop) + '\n';
            if (ri == 0 || !(rhos[ri] > rhos[ri - 1]))
                continue;
            const MiReport& prev = res[si * rhos.size() + ri - 1].report;
            if (p.report.i_s < prev.i_s - slack || p.report.i_c > prev.i_c + slack) {
                r.passed = false;
                r.messages.push_back("snr " + num(snrs[si]) + ": frontier not monotone at rho " +
                                     num(rhos[ri]));
            }
        }
    }
    r.dat = csv_to_dat(r.csv, 0);
    return r;
}

ExperimentResult run_scenario_gen(const ExperimentConfig& cfg) {
    ExperimentResult r;
    r.name = "scenario";
    r.scenario_json = scenario_to_json(build_scenario(cfg)) + '\n';
    return r;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, ExperimentKind kind) {
    validate(cfg, kind);
    switch (kind) {
    case ExperimentKind::verify: return run_verify(cfg);
    case ExperimentKind::convergence: return run_convergence(cfg);
    case ExperimentKind::sweep: return run_sweep(cfg);
    case ExperimentKind::tradeoff: return run_tradeoff(cfg);
    case ExperimentKind::scenario_gen: return run_scenario_gen(cfg);
    }
    throw ConfigError("unknown experiment");
}

std::vector<std::string> write_outputs(const ExperimentConfig& cfg, const ExperimentResult& r) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(cfg.output.dir, ec);
    if (ec)
        throw std::runtime_error("cannot create " + cfg.output.dir.string() + ": " + ec.message());
    std::vector<std::string> written;
    auto put = [&](const std::string& file, const std::string& text) {
        const fs::path p = cfg.output.dir / file;
        std::ofstream out(p, std::ios::binary);
        out << text;
        if (!out)
            throw std::runtime_error("cannot write " + p.string());
        written.push_back(p.string());
    };
    if (!r.csv.empty())
        put(r.name + ".csv", r.csv);
    if (cfg.output.gnuplot && !r.dat.empty())
        put(r.name + ".dat", r.dat);
    if (!r.scenario_json.empty())
        put(r.name + ".json", r.scenario_json);
    return written;
}

std::string csv_schemas() {
    return R"(CSV outputs (MI columns in bits, rows in grid order):
  verify.csv      snr_db,rho,i_s_bits,mc_i_s_bits,se_i_s_bits,gap_s,i_c_bits,mc_i_c_bits,
                  se_i_c_bits,gap_c,residual_s,residual_c,iters_s,iters_c,status
                  status: ok | solver_failed | mc_failed | gap_exceeded
  convergence.csv n,snr_db,iter,weighted_bits,step,grad_norm
  sweep.csv       snr_db,rho,baseline_bits,optimized_bits,baseline_i_s_bits,baseline_i_c_bits,
                  optimized_i_s_bits,optimized_i_c_bits,iterations,stop
  tradeoff.csv    snr_db,rho,i_s_bits,i_c_bits,weighted_bits,iterations,stop
  scenario.json   pinned channel statistics (scenario-gen)
With output.gnuplot, each CSV is mirrored to a whitespace-separated .dat file;
convergence.dat and tradeoff.dat hold one data block per antenna count / SNR.

Exit codes: 0 success, 1 configuration error, 2 numerical failure or failed check.
Environment: ISAC_MI_THREADS caps the worker count.)";
}

} // namespace isac::cli
