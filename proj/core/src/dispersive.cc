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

#include "gkpforge/dispersive.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <sstream>
#include <thread>

namespace gkpforge {

void NoiseRates::validate() const {
    if (kappa_loss < 0.0 || kappa_dephase < 0.0 || gamma_decay < 0.0 || gamma_dephase < 0.0) {
        throw ConfigError("noise rates must be non-negative");
    }
}

std::string channel_name(NoiseChannel channel) {
    switch (channel) {
        case NoiseChannel::kLoss:
            return "loss";
        case NoiseChannel::kOscillatorDephasing:
            return "osc-dephase";
        case NoiseChannel::kQubitDecay:
            return "qubit-decay";
        case NoiseChannel::kQubitDephasing:
            return "qubit-dephase";
    }
    return "?";
}

NoiseChannel parse_channel(const std::string &name) {
    for (NoiseChannel c : {NoiseChannel::kLoss, NoiseChannel::kOscillatorDephasing, NoiseChannel::kQubitDecay,
                           NoiseChannel::kQubitDephasing}) {
        if (channel_name(c) == name) {
            return c;
        }
    }
    throw ConfigError("unknown noise channel '" + name + "' (loss, osc-dephase, qubit-decay, qubit-dephase)");
}

NoiseRates with_channel_rate(NoiseRates base, NoiseChannel channel, double rate) {
    switch (channel) {
        case NoiseChannel::kLoss:
            base.kappa_loss = rate;
            break;
        case NoiseChannel::kOscillatorDephasing:
            base.kappa_dephase = rate;
            break;
        case NoiseChannel::kQubitDecay:
            base.gamma_decay = rate;
            break;
        case NoiseChannel::kQubitDephasing:
            base.gamma_dephase = rate;
            break;
    }
    return base;
}

std::string qubit_op_name(QubitOp op) {
    switch (op) {
        case QubitOp::kPrepareV:
            return "U_v";
        case QubitOp::kInverseQft:
            return "QFT^-1";
        case QubitOp::kQft:
            return "QFT";
        case QubitOp::kGlobalFlip:
            return "flip";
    }
    return "?";
}

double DriveSchedule::total_duration() const {
    double t = 0.0;
    for (const DriveSegment &s : segments) {
        t += s.duration;
    }
    return t;
}

int DriveSchedule::flip_count() const {
    int n = 0;
    for (const DriveSegment &s : segments) {
        n += static_cast<int>(std::count(s.pre_ops.begin(), s.pre_ops.end(), QubitOp::kGlobalFlip));
    }
    return n;
}

namespace {

bool valid_flip_count(int n) { return n >= 0 && (n % 4 == 0 || n % 4 == 3); }

// Echo flips inside each of the two interaction windows.
int window_flips(int n_flips) { return n_flips % 4 == 0 ? n_flips / 2 : (n_flips - 1) / 2; }

}  // namespace

void SimConfig::validate() const {
    if (n_qubits < 1 || n_qubits > 6) {
        throw ConfigError("dispersive n_qubits must be in [1, 6]");
    }
    if (fock_cutoff < 2) {
        throw ConfigError("fock_cutoff must be at least 2");
    }
    if (!(chi > 0.0) || !(alpha0 > 0.0)) {
        throw ConfigError("chi and alpha0 must be positive");
    }
    if (!valid_flip_count(n_flips)) {
        throw ConfigError("n_flips " + std::to_string(n_flips) +
                          " cannot return the qubits to their orientation before the QFT; use 0, 3, 4, 7, 8, 11, ...");
    }
    if (dt < 0.0 || dt > max_dt() * (1.0 + 1e-12)) {
        throw ConfigError("dt must be in (0, " + std::to_string(max_dt()) + "] or 0 for automatic");
    }
    if (!(w > 1.0) || !(peak_spacing > 0.0)) {
        throw ConfigError("W must exceed 1 and P_q must be positive");
    }
    noise.validate();
}

double SimConfig::chi_n(int n) const { return chi * std::ldexp(1.0, n - 2); }

double SimConfig::max_dt() const { return 0.01 / (chi_max() * alpha0 * std::sqrt(2.0)); }

double interaction_time(double alpha0, double chi, double peak_spacing) {
    return 2.0 * std::sqrt(2.0) * kPi / (alpha0 * chi * peak_spacing);
}

double disentangle_time(double alpha0, double chi, double peak_spacing, int dim) {
    return std::sqrt(2.0) * peak_spacing / (alpha0 * chi * dim);
}

DriveSchedule build_schedule(const SimConfig &config) {
    config.validate();
    if (config.n_qubits < 2) {
        throw ConfigError("the protocol schedule needs n_qubits >= 2");
    }
    DriveSchedule s;
    s.alpha0 = config.alpha0;
    s.tau_interaction = interaction_time(config.alpha0, config.chi, config.peak_spacing);
    s.tau_disentangle = disentangle_time(config.alpha0, config.chi, config.peak_spacing, config.dim());
    const int m = window_flips(config.n_flips);
    // Each flip inverts sigma_z, so alpha changes sign with it to keep the interaction term.
    for (int seg = 0; seg <= m; ++seg) {
        DriveSegment d;
        d.duration = s.tau_interaction / (m + 1);
        d.alpha = (seg % 2 == 0 ? 1.0 : -1.0) * config.alpha0;
        if (seg == 0) {
            d.pre_ops = {QubitOp::kPrepareV, QubitOp::kInverseQft};
        } else {
            d.pre_ops = {QubitOp::kGlobalFlip};
        }
        s.segments.push_back(d);
    }
    for (int seg = 0; seg <= m; ++seg) {
        DriveSegment d;
        d.duration = s.tau_disentangle / (m + 1);
        d.alpha = (seg % 2 == 0 ? -1.0 : 1.0) * kI * config.alpha0;
        if (seg == 0) {
            if (m % 2 == 1) {
                d.pre_ops.push_back(QubitOp::kGlobalFlip);
            }
            d.pre_ops.push_back(QubitOp::kQft);
        } else {
            d.pre_ops = {QubitOp::kGlobalFlip};
        }
        s.segments.push_back(d);
    }
    s.segments.push_back({0.0, 0.0, {}});
    return s;
}

AccumulatedArea accumulated_area(const DriveSchedule &schedule, double chi) {
    AccumulatedArea area;
    double orientation = 1.0;
    bool disentangling = false;
    for (const DriveSegment &seg : schedule.segments) {
        for (QubitOp op : seg.pre_ops) {
            if (op == QubitOp::kGlobalFlip) {
                orientation = -orientation;
            } else if (op == QubitOp::kQft) {
                disentangling = true;
            }
        }
        const double scale = chi * orientation * seg.duration / std::sqrt(2.0);
        if (disentangling) {
            area.disentangle -= scale * seg.alpha.imag();
        } else {
            area.interaction += scale * seg.alpha.real();
        }
    }
    return area;
}

JointDensityMatrix initial_joint_state(const SimConfig &config) {
    config.validate();
    const WaveFunction psi0 =
        momentum_displace(squeezed_vacuum(config.w, config.grid), -kPi / config.peak_spacing);
    const FockVector f = to_fock(psi0, config.fock_cutoff);
    const int fd = config.fock_dim();
    const int dim = config.dim() * fd;
    JointDensityMatrix out{config.n_qubits, config.fock_cutoff, CMatrix::Zero(dim, dim)};
    const CVector c = f.coeffs / f.coeffs.norm();
    out.rho.topLeftCorner(fd, fd) = c * c.adjoint();
    return out;
}

Trajectory integrate(const SimConfig &config, const DriveSchedule &schedule, const JointDensityMatrix &initial,
                     bool keep_snapshots) {
    config.validate();
    if (initial.n_qubits != config.n_qubits || initial.fock_cutoff != config.fock_cutoff) {
        throw ConfigError("initial state does not match the simulation dimensions");
    }
    const LindbladGenerator gen(config);
    const double dt_max = config.resolved_dt();
    Trajectory traj{initial, {}, {}};
    JointDensityMatrix &state = traj.final_state;
    IntegrationReport &rep = traj.report;
    const double trace0 = state.trace();
    double t = 0.0;
    for (const DriveSegment &seg : schedule.segments) {
        for (QubitOp op : seg.pre_ops) {
            apply_qubit_unitary(qubit_op_unitary(op, config), state);
        }
        const long steps = seg.duration > 0.0 ? static_cast<long>(std::ceil(seg.duration / dt_max - 1e-9)) : 0;
        const double h = steps > 0 ? seg.duration / steps : 0.0;
        gen.evolve(state.rho, seg.alpha, h, steps);
        rep.steps += steps;
        t += seg.duration;
        rep.segment_end_times.push_back(t);
        rep.traces.push_back(state.trace());
        rep.max_trace_drift = std::max(rep.max_trace_drift, std::abs(state.trace() - trace0));
        rep.max_hermiticity_error = std::max(rep.max_hermiticity_error, state.hermiticity_error());
        rep.max_purity = std::max(rep.max_purity, state.purity());
        if (keep_snapshots) {
            traj.snapshots.push_back(state);
        }
    }
    rep.final_min_eigenvalue = state.min_eigenvalue();
    if (rep.max_trace_drift > 1e-6 || rep.max_hermiticity_error > 1e-8) {
        std::ostringstream msg;
        msg << "integration drifted: trace " << rep.max_trace_drift << ", hermiticity " << rep.max_hermiticity_error
            << "; reduce dt";
        throw ToleranceError(msg.str());
    }
    return traj;
}

DispersiveResult run_dispersive(const SimConfig &config) {
    config.validate();
    const DriveSchedule schedule = build_schedule(config);
    const JointDensityMatrix initial = initial_joint_state(config);
    const CVector c0 = initial.rho.topLeftCorner(config.fock_dim(), config.fock_dim()).diagonal();
    const double tail = std::max(c0[config.fock_cutoff].real(), c0[config.fock_cutoff - 1].real());
    Trajectory traj = integrate(config, schedule, initial);
    CMatrix fock = traj.final_state.oscillator_fock();
    fock = 0.5 * (fock + fock.adjoint()).eval();
    LowRankDensity osc = fock_density_to_grid(fock, config.grid);
    return {std::move(osc), std::move(fock), std::move(traj.report), schedule, tail};
}

int sweep_thread_limit() {
    if (const char *env = std::getenv("GKPFORGE_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) {
            return n;
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

SweepResult sweep_noise(const SimConfig &config, NoiseChannel channel, const std::vector<double> &rates,
                        const DispersiveResult &zero_noise, const FitResult &zero_fit) {
    for (double r : rates) {
        if (r < 0.0) {
            throw ConfigError("sweep rates must be non-negative");
        }
    }
    SweepResult out;
    out.target = zero_fit.params;
    const LogicalAmplitudes amps{config.vprep.phi_v, config.vprep.omega_v};
    const CVector g0 = logical_samples(amps, zero_fit.params, config.grid);
    out.zero_noise_fidelity = fidelity_pure(zero_noise.oscillator, g0);

    std::vector<double> sorted = rates;
    std::sort(sorted.begin(), sorted.end());
    out.rows.resize(sorted.size());
    std::vector<std::exception_ptr> errors(sorted.size());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (size_t i = next++; i < sorted.size(); i = next++) {
            try {
                double fid = out.zero_noise_fidelity;
                if (sorted[i] > 0.0) {
                    SimConfig c = config;
                    c.noise = with_channel_rate(config.noise, channel, sorted[i]);
                    fid = fidelity_pure(run_dispersive(c).oscillator, g0);
                }
                out.rows[i] = {sorted[i], sorted[i] / config.chi_max(), channel, fid};
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const int n_threads = std::min<int>(sweep_thread_limit(), static_cast<int>(sorted.size()));
    std::vector<std::thread> pool;
    for (int i = 1; i < n_threads; ++i) {
        pool.emplace_back(worker);
    }
    worker();
    for (std::thread &t : pool) {
        t.join();
    }
    for (const std::exception_ptr &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return out;
}

SweepResult sweep_noise(const SimConfig &config, NoiseChannel channel, const std::vector<double> &rates) {
    SimConfig clean = config;
    clean.noise = NoiseRates{};
    const DispersiveResult zero = run_dispersive(clean);
    const FitResult fit = fit_gkp(zero.oscillator, {config.vprep.phi_v, config.vprep.omega_v});
    return sweep_noise(clean, channel, rates, zero, fit);
}

}  // namespace gkpforge
