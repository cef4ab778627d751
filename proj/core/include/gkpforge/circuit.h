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

// Gate-level constructions for the qudit register.

#ifndef GKPFORGE_CIRCUIT_H
#define GKPFORGE_CIRCUIT_H

#include <string>
#include <vector>

#include "gkpforge/qudit.h"

namespace gkpforge {

enum class GateKind {
    kHadamard,
    kX,
    kCnot,
    kSwap,
    kPhase,            // diag(1, e^{i angle})
    kControlledPhase,  // R_k = diag(1, e^{2 pi i / 2^k}) on target, controlled
    kRy,               // exp(-i angle sigma_y / 2)
    kRz,               // exp(-i angle sigma_z / 2)
};

/// Qubits are bit positions of the level index (0 = least significant).
struct Gate {
    GateKind kind;
    int target = 0;
    int control = -1;  // kCnot, kControlledPhase; second qubit of kSwap
    double angle = 0.0;
    int k = 0;         // R_k order for kControlledPhase

    std::string name() const;
};

using GateList = std::vector<Gate>;

/// Unitary of the gate list (first gate applied first).
CMatrix circuit_unitary(const GateList &gates, int n_qubits);

/// Applies the gate list to |0...0>.
QuditState run_circuit(const GateList &gates, const QuditDims &dims);

/// min over global phases of max |A - e^{i g} B|.
double distance_up_to_phase(const CMatrix &a, const CMatrix &b);

/// Textbook QFT (Hadamards, controlled R_k, swaps) sandwiched between Z
/// phases on the least significant qubit, which recentres the indices onto K.
/// Throws ToleranceError if the composed circuit deviates from qft_matrix by
/// more than 1e-9 up to a global phase.
GateList qft_circuit(const QuditDims &dims);

/// Preparation circuit U_v acting on |0...0>, built from X, CNOT, RY and RZ.
/// Throws ToleranceError if the output's fidelity with build_v_state is below 0.99.
GateList u_v_circuit(const QuditDims &dims, const VPrepParams &params);

}  // namespace gkpforge

#endif  // GKPFORGE_CIRCUIT_H
