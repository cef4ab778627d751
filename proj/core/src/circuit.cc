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

#include "gkpforge/circuit.h"

#include <cmath>
#include <string>

namespace gkpforge {

std::string Gate::name() const {
    switch (kind) {
        case GateKind::kHadamard:
            return "H";
        case GateKind::kX:
            return "X";
        case GateKind::kCnot:
            return "CNOT";
        case GateKind::kSwap:
            return "SWAP";
        case GateKind::kPhase:
            return "P";
        case GateKind::kControlledPhase:
            return "CR" + std::to_string(k);
        case GateKind::kRy:
            return "RY";
        case GateKind::kRz:
            return "RZ";
    }
    return "?";
}

namespace {

void check_qubit(int q, int n_qubits) {
    if (q < 0 || q >= n_qubits) {
        throw ConfigError("gate qubit " + std::to_string(q) + " out of range");
    }
}

// Applies a 2x2 matrix to `target`, optionally conditioned on `control` being 1.
void apply_single(CVector &psi, int target, int control, const Complex u[2][2]) {
    const Eigen::Index dim = psi.size();
    const Eigen::Index t = Eigen::Index{1} << target;
    for (Eigen::Index b = 0; b < dim; ++b) {
        if (b & t) {
            continue;
        }
        if (control >= 0 && !((b >> control) & 1)) {
            continue;
        }
        const Complex a0 = psi[b];
        const Complex a1 = psi[b | t];
        psi[b] = u[0][0] * a0 + u[0][1] * a1;
        psi[b | t] = u[1][0] * a0 + u[1][1] * a1;
    }
}

void apply_gate(CVector &psi, const Gate &g, int n_qubits) {
    check_qubit(g.target, n_qubits);
    const double r = 1.0 / std::sqrt(2.0);
    switch (g.kind) {
        case GateKind::kHadamard: {
            const Complex u[2][2] = {{r, r}, {r, -r}};
            apply_single(psi, g.target, -1, u);
            return;
        }
        case GateKind::kX: {
            const Complex u[2][2] = {{0.0, 1.0}, {1.0, 0.0}};
            apply_single(psi, g.target, -1, u);
            return;
        }
        case GateKind::kCnot: {
            check_qubit(g.control, n_qubits);
            const Complex u[2][2] = {{0.0, 1.0}, {1.0, 0.0}};
            apply_single(psi, g.target, g.control, u);
            return;
        }
        case GateKind::kSwap: {
            check_qubit(g.control, n_qubits);
            const Eigen::Index a = Eigen::Index{1} << g.target;
            const Eigen::Index c = Eigen::Index{1} << g.control;
            for (Eigen::Index b = 0; b < psi.size(); ++b) {
                if ((b & a) && !(b & c)) {
                    std::swap(psi[b], psi[(b ^ a) | c]);
                }
            }
            return;
        }
        case GateKind::kPhase: {
            const Complex u[2][2] = {{1.0, 0.0}, {0.0, std::polar(1.0, g.angle)}};
            apply_single(psi, g.target, -1, u);
            return;
        }
        case GateKind::kControlledPhase: {
            check_qubit(g.control, n_qubits);
            const Complex u[2][2] = {{1.0, 0.0}, {0.0, std::polar(1.0, 2.0 * kPi / std::ldexp(1.0, g.k))}};
            apply_single(psi, g.target, g.control, u);
            return;
        }
        case GateKind::kRy: {
            const double c = std::cos(g.angle / 2.0);
            const double s = std::sin(g.angle / 2.0);
            const Complex u[2][2] = {{c, -s}, {s, c}};
            apply_single(psi, g.target, -1, u);
            return;
        }
        case GateKind::kRz: {
            const Complex u[2][2] = {{std::polar(1.0, -g.angle / 2.0), 0.0}, {0.0, std::polar(1.0, g.angle / 2.0)}};
            apply_single(psi, g.target, -1, u);
            return;
        }
    }
}

}  // namespace

CMatrix circuit_unitary(const GateList &gates, int n_qubits) {
    const QuditDims dims(n_qubits);
    CMatrix u = CMatrix::Identity(dims.dim(), dims.dim());
    for (Eigen::Index col = 0; col < u.cols(); ++col) {
        CVector psi = u.col(col);
        for (const Gate &g : gates) {
            apply_gate(psi, g, n_qubits);
        }
        u.col(col) = psi;
    }
    return u;
}

QuditState run_circuit(const GateList &gates, const QuditDims &dims) {
    CVector psi = CVector::Zero(dims.dim());
    psi[0] = 1.0;
    for (const Gate &g : gates) {
        apply_gate(psi, g, dims.n_qubits());
    }
    return QuditState::normalized(dims, std::move(psi));
}

double distance_up_to_phase(const CMatrix &a, const CMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ConfigError("distance_up_to_phase: shape mismatch");
    }
    const Complex overlap = (a.adjoint() * b).trace();
    const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex(1.0);
    return (a * phase - b).norm();
}

GateList qft_circuit(const QuditDims &dims) {
    const int n = dims.n_qubits();
    GateList gates;
    // Shift by half a level on input and output: Z on the least significant qubit.
    gates.push_back({GateKind::kPhase, 0, -1, kPi});
    for (int t = n - 1; t >= 0; --t) {
        gates.push_back({GateKind::kHadamard, t});
        for (int c = t - 1; c >= 0; --c) {
            gates.push_back({GateKind::kControlledPhase, t, c, 0.0, t - c + 1});
        }
    }
    for (int i = 0; i < n / 2; ++i) {
        gates.push_back({GateKind::kSwap, i, n - 1 - i});
    }
    gates.push_back({GateKind::kPhase, 0, -1, kPi});
    const double err = distance_up_to_phase(circuit_unitary(gates, n), qft_matrix(dims).matrix);
    if (err > 1e-9) {
        throw ToleranceError("qft circuit mismatch " + std::to_string(err));
    }
    return gates;
}

GateList u_v_circuit(const QuditDims &dims, const VPrepParams &params) {
    const int n = dims.n_qubits();
    if (n < 2) {
        throw ConfigError("u_v_circuit needs at least 2 qubits");
    }
    GateList gates;
    const int msb = n - 1;
    if (n == 2) {
        // Both peaks overlap: qubit 0 carries the normalized superposition of the two peak profiles.
        const double c = std::cos(params.theta_v / 2.0);
        const double s = std::sin(params.theta_v / 2.0);
        const Complex a = std::cos(params.phi_v / 2.0);
        const Complex b = std::polar(std::sin(params.phi_v / 2.0), params.omega_v);
        const Complex chi0 = a * c + b * s;
        const Complex chi1 = a * s + b * c;
        const double eta = 2.0 * std::atan2(std::abs(chi1), std::abs(chi0));
        const double beta = std::arg(chi1) - std::arg(chi0);
        gates.push_back({GateKind::kRy, msb, -1, kPi / 2.0});
        gates.push_back({GateKind::kRy, 0, -1, eta});
        gates.push_back({GateKind::kRz, 0, -1, beta});
        gates.push_back({GateKind::kCnot, 0, msb});
    } else {
        const int flag = n - 2;
        gates.push_back({GateKind::kRy, flag, -1, kPi / 2.0});
        for (int j = 1; j <= n - 3; ++j) {
            gates.push_back({GateKind::kCnot, j, flag});
        }
        gates.push_back({GateKind::kRy, 0, -1, params.theta_v});
        gates.push_back({GateKind::kCnot, 0, flag});
        gates.push_back({GateKind::kX, 0});
        gates.push_back({GateKind::kRy, msb, -1, params.phi_v});
        gates.push_back({GateKind::kRz, msb, -1, params.omega_v});
        gates.push_back({GateKind::kCnot, msb, flag});
        gates.push_back({GateKind::kX, msb});
    }
    const QuditState got = run_circuit(gates, dims);
    const QuditState want = build_v_state(dims, params);
    const double fid = std::norm(want.amplitudes().dot(got.amplitudes()));
    if (fid < 0.99) {
        throw ToleranceError("u_v circuit fidelity " + std::to_string(fid));
    }
    return gates;
}

}  // namespace gkpforge
