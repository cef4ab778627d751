// Copyright 2026 The gkpforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.h"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace gkpforge::cli {

namespace fs = std::filesystem;

namespace {

using ordered_json = nlohmann::ordered_json;

std::string prepare(const std::string &out_dir, const std::string &name) {
    const fs::path dir(out_dir);
    fs::create_directories(dir / fs::path(name).parent_path());
    return (dir / name).string();
}

FileMetadata metadata(const std::string &command, const RunConfig &config) { return {command, config.echo()}; }

void write_fit(const std::string &out_dir, const FitResult &fit, const FileMetadata &meta, std::ostream &log) {
    write_text_file(prepare(out_dir, "fit.json"), fit_report_json(fit, meta));
    log << "delta=" << shortest(fit.params.delta) << " (" << shortest(fit.delta_db()) << " dB)"
        << " kappa=" << shortest(fit.params.kappa) << " phi=" << shortest(fit.params.phi)
        << " fidelity=" << shortest(fit.fidelity) << "\n";
    if (fit.nonconvergence_flag) {
        log << "warning: fit refinement did not improve on the coarse grid\n";
    }
}

LogicalAmplitudes logical(const RunConfig &config) { return {config.vprep.phi_v, config.vprep.omega_v}; }

}  // namespace

std::vector<double> parse_rate_list(const std::string &text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        double v = 0.0;
        const char *first = item.data();
        const char *last = item.data() + item.size();
        while (first < last && *first == ' ') {
            ++first;
        }
        const auto r = std::from_chars(first, last, v);
        if (r.ec != std::errc() || r.ptr != last || !std::isfinite(v) || v < 0.0) {
            throw ConfigError("--rates: expected non-negative numbers, got '" + item + "'");
        }
        out.push_back(v);
    }
    if (out.empty()) {
        throw ConfigError("--rates: empty list");
    }
    return out;
}

void cmd_run_ideal(const RunConfig &config, const std::string &out_dir, std::ostream &log) {
    const FileMetadata meta = metadata("run-ideal", config);
    const IdealRun run = run_ideal(config.protocol());
    for (const std::string &w : run.warnings) {
        log << "warning: " << w << "\n";
    }
    const LowRankDensity rho = run.final_state.oscillator();
    if (config.wants("density")) {
        write_density_csv(prepare(out_dir, "density.csv"), rho, meta);
    }
    if (config.wants("wigner")) {
        write_wigner_csv(prepare(out_dir, "wigner.csv"), wigner(rho, config.wigner), meta);
    }
    if (config.wants("snapshots")) {
        const std::pair<const char *, const JointState *> steps[] = {
            {"snapshots/step3_inverse_qft_wigner.csv", &run.after_inverse_qft},
            {"snapshots/step4_interaction_wigner.csv", &run.after_interaction},
            {"snapshots/step5_qft_wigner.csv", &run.after_qft},
            {"snapshots/step6_final_wigner.csv", &run.final_state},
        };
        for (const auto &[name, state] : steps) {
            write_wigner_csv(prepare(out_dir, name), wigner(state->oscillator(), config.wigner), meta);
        }
    }
    FitResult fit;
    const bool need_fit = config.wants("fit") || config.wants("metadata");
    if (need_fit) {
        fit = fit_gkp(rho, logical(config));
    }
    if (config.wants("fit")) {
        write_fit(out_dir, fit, meta, log);
    }
    if (config.wants("metadata")) {
        ordered_json j;
        j["command"] = meta.command;
        j["config_hash"] = meta.config_hash();
        j["purity"] = rho.purity();
        j["disentanglement_entropy"] = disentanglement_entropy(run.final_state);
        j["norms"] = run.norms;
        j["warnings"] = run.warnings;
        j["delta_times_dim"] = fit.params.delta * (1 << config.n_qubits);
        write_text_file(prepare(out_dir, "metadata.json"), j.dump(2) + "\n");
    }
}

void cmd_run_dispersive(const RunConfig &config, const std::string &out_dir, std::ostream &log) {
    const SimConfig sim = config.sim();
    sim.validate();
    const FileMetadata meta = metadata("run-dispersive", config);
    if (config.wants("schedule")) {
        write_schedule_csv(prepare(out_dir, "schedule.csv"), build_schedule(sim), meta);
    }
    const DispersiveResult res = run_dispersive(sim);
    log << "steps=" << res.report.steps << " trace_drift=" << shortest(res.report.max_trace_drift)
        << " min_eigenvalue=" << shortest(res.report.final_min_eigenvalue) << "\n";
    if (config.wants("density")) {
        write_density_csv(prepare(out_dir, "density.csv"), res.oscillator, meta);
    }
    if (config.wants("wigner")) {
        write_wigner_csv(prepare(out_dir, "wigner.csv"), wigner(res.oscillator, config.wigner), meta);
    }
    if (config.wants("fit")) {
        write_fit(out_dir, fit_gkp(res.oscillator, logical(config)), meta, log);
    }
    if (config.wants("metadata")) {
        write_text_file(prepare(out_dir, "metadata.json"), dispersive_metadata_json(sim, res, meta));
    }
}

void cmd_sweep(const RunConfig &config, NoiseChannel channel, const std::vector<double> &ratios,
               const std::string &out_dir, std::ostream &log) {
    const SimConfig sim = config.sim();
    sim.validate();
    FileMetadata meta = metadata("sweep", config);
    std::string list;
    std::vector<double> rates;
    for (double r : ratios) {
        list += (list.empty() ? "" : ",") + shortest(r);
        rates.push_back(r * sim.chi_max());
    }
    meta.config.emplace_back("sweep.channel", channel_name(channel));
    meta.config.emplace_back("sweep.rate_ratios", list);

    SimConfig clean = sim;
    clean.noise = {};
    const DispersiveResult zero = run_dispersive(clean);
    const FitResult zero_fit = fit_gkp(zero.oscillator, logical(config));
    const SweepResult sweep = sweep_noise(sim, channel, rates, zero, zero_fit);
    write_sweep_csv(prepare(out_dir, "sweep.csv"), sweep, meta);
    if (config.wants("metadata")) {
        write_text_file(prepare(out_dir, "metadata.json"), dispersive_metadata_json(clean, zero, meta));
    }
    for (const SweepRow &r : sweep.rows) {
        log << channel_name(r.channel) << " rate/chi_max=" << shortest(r.rate_ratio)
            << " fidelity=" << shortest(r.fidelity) << "\n";
    }
}

void cmd_fit(const std::string &density_path, const LogicalAmplitudes &amps, const std::string &out_dir,
             std::ostream &log) {
    const auto rho = read_density_csv(density_path);
    const FitResult fit = std::visit([&amps](const auto &r) { return fit_gkp(r, amps); }, rho);
    const FileMetadata meta{"fit-gkp",
                            {{"fit.input", fs::path(density_path).filename().string()},
                             {"fit.phi_v", shortest(amps.phi_v)},
                             {"fit.omega_v", shortest(amps.omega_v)}}};
    write_fit(out_dir, fit, meta, log);
}

void cmd_vstate(const RunConfig &config, const std::string &out_dir, std::ostream &log) {
    const QuditState v = build_v_state(QuditDims(config.n_qubits), config.vprep);
    const FileMetadata meta = metadata("v-state", config);
    write_vstate_csv(prepare(out_dir, "amplitudes.csv"), prepare(out_dir, "interpolation.csv"), v, meta);
    if (!config.vprep.theta_in_validated_range()) {
        log << "warning: theta_v outside the validated range [2.5, 2.7]\n";
    }
    log << "sigma=" << shortest(peak_sigma(v, 0.0)) << " weight_peak0=" << shortest(peak_weight(v, 0.0))
        << " weight_peak1=" << shortest(peak_weight(v, config.n_qubits > 0 ? (1 << config.n_qubits) / 2.0 : 0.0))
        << "\n";
}

}  // namespace gkpforge::cli
