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

// Noise-free execution of the qubit-to-oscillator mapping protocol:
//   1. oscillator in psi_0(q) = exp(-i q pi / P_q) psi_W(q)
//   2. qubits in |v>
//   3. inverse QFT on the qubits
//   4. U_I = exp(i (2 pi / P_q) q X_N)
//   5. QFT on the qubits
//   6. U_D = exp(-i (P_q / M) p X_N)
// The joint state is kept exactly as M oscillator branches, one per level.

#ifndef GKPFORGE_IDEAL_PROTOCOL_H
#define GKPFORGE_IDEAL_PROTOCOL_H

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gkpforge/gkp.h"
#include "gkpforge/qudit.h"

namespace gkpforge {

struct ProtocolParams {
    int n_qubits = 3;
    double w = 3.2;
    double peak_spacing = kDefaultPeakSpacing;
    VPrepParams vprep;
    PositionGrid grid = PositionGrid::standard();
    /// Replaces build_v_state(vprep) when set (allows N = 1 and arbitrary |v>).
    std::optional<QuditState> initial_qudit;

    /// Throws ConfigError for W <= 1, P_q <= 0, or N outside [1, 8].
    void validate() const;
    /// W > P_q / 2, the regime in which U_D approximately disentangles.
    bool disentangling_regime() const { return w > peak_spacing / 2.0; }
    QuditState qudit_state() const;
};

/// Column k holds the oscillator wavefunction paired with level k.
struct JointState {
    PositionGrid grid;
    CMatrix branches;

    double norm() const;
    /// M x M reduced qudit density matrix <psi_l|psi_k> dq.
    CMatrix qudit_density() const;
    LowRankDensity oscillator() const;
};

struct IdealRun {
    WaveFunction initial_oscillator;  // after step 1
    JointState after_inverse_qft;     // step 3
    JointState after_interaction;     // step 4
    JointState after_qft;             // step 5
    JointState final_state;           // step 6
    std::vector<double> norms;        // total norm after each step
    std::vector<std::string> warnings;
};

IdealRun run_ideal(const ProtocolParams &params);

GridDensityMatrix reduce_oscillator(const JointState &joint);

/// Closed-form branches psi_W(q - l P_q / M) v(M q / P_q), normalized jointly.
JointState analytic_branches(const ProtocolParams &params);
GridDensityMatrix analytic_density(const ProtocolParams &params);

double disentanglement_entropy(const JointState &joint);

struct ScalingRow {
    int n_qubits = 0;
    double w = 0.0;
    double delta = 0.0;
    double kappa = 0.0;
    double fidelity = 0.0;
    double delta_times_dim = 0.0;
};

/// run_ideal + fit_gkp for each N; `w_rule` maps N to the initial width.
std::vector<ScalingRow> scaling_study(const std::vector<int> &n_list,
                                      const std::function<double(int)> &w_rule,
                                      const VPrepParams &vprep = {});

}  // namespace gkpforge

#endif  // GKPFORGE_IDEAL_PROTOCOL_H
