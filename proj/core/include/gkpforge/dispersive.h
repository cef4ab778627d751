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

// Dispersive implementation of the protocol: Lindblad evolution of the joint
// qubits-oscillator density matrix in the displaced rotating frame, driven by
// a piecewise-constant frame displacement alpha(t) with echo flips.

#ifndef GKPFORGE_DISPERSIVE_H
#define GKPFORGE_DISPERSIVE_H

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gkpforge/gkp.h"
#include "gkpforge/qudit.h"

namespace gkpforge {

/// Rates in units of chi.
struct NoiseRates {
    double kappa_loss = 0.0;     // D[a]
    double kappa_dephase = 0.0;  // 2 kappa_phi D[(a^+ + alpha*)(a + alpha)]
    double gamma_decay = 0.0;    // D[sigma_-^(n)]
    double gamma_dephase = 0.0;  // 2 gamma_phi D[sigma_z^(n) / 2]

    void validate() const;
};

enum class NoiseChannel { kLoss, kOscillatorDephasing, kQubitDecay, kQubitDephasing };

std::string channel_name(NoiseChannel channel);
/// Accepts loss, osc-dephase, qubit-decay, qubit-dephase.
NoiseChannel parse_channel(const std::string &name);
NoiseRates with_channel_rate(NoiseRates base, NoiseChannel channel, double rate);

enum class QubitOp { kPrepareV, kInverseQft, kQft, kGlobalFlip };

std::string qubit_op_name(QubitOp op);

struct DriveSegment {
    double duration = 0.0;
    Complex alpha{0.0, 0.0};
    std::vector<QubitOp> pre_ops;
};

struct DriveSchedule {
    std::vector<DriveSegment> segments;
    double alpha0 = 0.0;
    double tau_interaction = 0.0;   // tau_I
    double tau_disentangle = 0.0;   // tau_D

    double total_duration() const;
    int flip_count() const;
};

struct SimConfig {
    int n_qubits = 3;
    int fock_cutoff = 80;
    double chi = 1.0;
    double alpha0 = 30.0;
    /// Total global qubit flips over the sequence: m echo flips inside each
    /// interaction window plus one restoring flip before the QFT when m is
    /// odd. Valid values: 0, 3, 4, 7, 8, 11, 12, 15, ...
    int n_flips = 7;
    /// RK4 step; 0 selects 0.01 / (chi_max alpha0 sqrt 2).
    double dt = 0.0;
    NoiseRates noise;
    /// Keeps the (1/2) chi^(n) a^+a sigma_z^(n) term; disable for diagnostics.
    bool number_coupling = true;
    double w = 3.2;
    double peak_spacing = kDefaultPeakSpacing;
    VPrepParams vprep;
    PositionGrid grid = PositionGrid::standard();

    void validate() const;
    int dim() const { return 1 << n_qubits; }
    int fock_dim() const { return fock_cutoff + 1; }
    /// chi^(n) = chi 2^(n-2), n = 1..N.
    double chi_n(int n) const;
    double chi_max() const { return chi_n(n_qubits); }
    double max_dt() const;
    double resolved_dt() const { return dt > 0.0 ? dt : max_dt(); }
};

/// tau_I = 2 sqrt(2) pi / (alpha0 chi P_q).
double interaction_time(double alpha0, double chi, double peak_spacing);
/// tau_D = sqrt(2) P_q / (alpha0 chi M).
double disentangle_time(double alpha0, double chi, double peak_spacing, int dim);

/// [U_v, F^dagger] then tau_I in m+1 equal segments with alpha = +-alpha0 and
/// a global flip between segments, [restoring flip], F, then tau_D likewise
/// with alpha = -+i alpha0, and a closing zero-length segment at alpha = 0.
DriveSchedule build_schedule(const SimConfig &config);

/// Sum over segments of chi alpha s dt / sqrt 2, with s = +-1 the qubit
/// orientation (flipped by each global flip). Real part for the tau_I
/// window, imaginary part (negated) for tau_D. Expected: 2 pi / P_q and P_q / M.
struct AccumulatedArea {
    double interaction = 0.0;
    double disentangle = 0.0;
};
AccumulatedArea accumulated_area(const DriveSchedule &schedule, double chi);

/// Joint index = level * (fock_cutoff + 1) + n.
struct JointDensityMatrix {
    int n_qubits = 0;
    int fock_cutoff = 0;
    CMatrix rho;

    double trace() const;
    double hermiticity_error() const;
    double purity() const;
    double min_eigenvalue() const;
    CMatrix oscillator_fock() const;
};

/// Dense H_eff for constant alpha on the joint space (reference form):
/// sum_n chi^(n)/2 [a^+a + alpha a^+ + alpha* a] sigma_z^(n).
CMatrix effective_hamiltonian(const SimConfig &config, Complex alpha);

/// Dense reference Lindblad right-hand side for a given H.
CMatrix lindblad_rhs(const CMatrix &rho, const CMatrix &h, const SimConfig &config, Complex alpha);

/// Fast structured generator used by the integrator. Exploits that every
/// oscillator operator is banded in the Fock basis and that sigma_z is
/// diagonal in the register basis.
class LindbladGenerator {
  public:
    explicit LindbladGenerator(const SimConfig &config);
    void apply(const CMatrix &rho, Complex alpha, CMatrix &out) const;
    /// `steps` classical RK4 steps of size h at constant alpha. Without qubit
    /// decay each register block pair evolves on its own and is integrated in
    /// cache; otherwise falls back to full-matrix steps via apply().
    void evolve(CMatrix &rho, Complex alpha, double h, long steps) const;

  private:
    int levels_;
    int fock_;
    std::vector<double> level_coupling_;  // sum_n chi^(n) z_n(b) / 2
    std::vector<double> decay_diag_;      // -(gamma_l/2) #{n : bit n of b = 0}
    SimConfig config_;
    mutable CMatrix scratch_;  // L rho for the dephasing sandwich; one generator per thread
};

/// Unitary on the qubit register for an instantaneous operation.
CMatrix qubit_op_unitary(QubitOp op, const SimConfig &config);
void apply_qubit_unitary(const CMatrix &u, JointDensityMatrix &state);

struct IntegrationReport {
    std::vector<double> segment_end_times;
    std::vector<double> traces;  // after each segment
    double max_trace_drift = 0.0;
    double max_hermiticity_error = 0.0;
    double final_min_eigenvalue = 0.0;
    double max_purity = 0.0;
    long steps = 0;
};

struct Trajectory {
    JointDensityMatrix final_state;
    std::vector<JointDensityMatrix> snapshots;  // after each segment if requested
    IntegrationReport report;
};

/// Fixed-step RK4, segment by segment; pre_ops applied as exact unitaries.
/// Throws ToleranceError("step-too-large") on trace drift > 1e-6 or
/// Hermiticity error > 1e-8.
Trajectory integrate(const SimConfig &config, const DriveSchedule &schedule,
                     const JointDensityMatrix &initial, bool keep_snapshots = false);

/// |0...0> on the register times the Fock encoding of psi_0.
JointDensityMatrix initial_joint_state(const SimConfig &config);

struct DispersiveResult {
    LowRankDensity oscillator;
    CMatrix fock_density;
    IntegrationReport report;
    DriveSchedule schedule;
    double initial_fock_tail = 0.0;
};

DispersiveResult run_dispersive(const SimConfig &config);

struct SweepRow {
    double rate = 0.0;
    double rate_ratio = 0.0;  // rate / chi_max
    NoiseChannel channel = NoiseChannel::kLoss;
    double fidelity = 0.0;
};

struct SweepResult {
    GkpParams target;  // G_0 from the zero-noise run
    double zero_noise_fidelity = 0.0;
    std::vector<SweepRow> rows;  // ascending rate
};

/// Fits G_0 to the zero-noise run, then reports the fidelity with G_0 for
/// each rate (given in units of chi). Points run concurrently, capped by
/// GKPFORGE_THREADS.
SweepResult sweep_noise(const SimConfig &config, NoiseChannel channel, const std::vector<double> &rates);

/// Same, reusing an existing zero-noise result.
SweepResult sweep_noise(const SimConfig &config, NoiseChannel channel, const std::vector<double> &rates,
                        const DispersiveResult &zero_noise, const FitResult &zero_fit);

int sweep_thread_limit();

}  // namespace gkpforge

#endif  // GKPFORGE_DISPERSIVE_H
