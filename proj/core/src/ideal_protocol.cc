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

#include "gkpforge/ideal_protocol.h"

#include <cmath>
#include <sstream>
#include <string>

namespace gkpforge {

void ProtocolParams::validate() const {
    if (n_qubits < 1 || n_qubits > 8) {
        throw ConfigError("n_qubits must be in [1, 8]");
    }
    if (!(w > 1.0)) {
        throw ConfigError("W must exceed 1");
    }
    if (!(peak_spacing > 0.0)) {
        throw ConfigError("P_q must be positive");
    }
    if (initial_qudit && initial_qudit->dims().n_qubits() != n_qubits) {
        throw ConfigError("initial qudit state has the wrong number of qubits");
    }
    if (!initial_qudit && n_qubits < 2) {
        throw ConfigError("the v-state preparation needs n_qubits >= 2; pass an explicit qudit state");
    }
}

QuditState ProtocolParams::qudit_state() const {
    return initial_qudit ? *initial_qudit : build_v_state(QuditDims(n_qubits), vprep);
}

double JointState::norm() const { return std::sqrt(branches.squaredNorm() * grid.dq()); }

CMatrix JointState::qudit_density() const { return branches.transpose() * branches.conjugate() * grid.dq(); }

LowRankDensity JointState::oscillator() const { return {grid, branches}; }

namespace {

JointState apply_qudit(const JointState &s, const CMatrix &u) { return {s.grid, s.branches * u.transpose()}; }

}  // namespace

IdealRun run_ideal(const ProtocolParams &params) {
    params.validate();
    const QuditDims dims(params.n_qubits);
    const int m_dim = dims.dim();
    const PositionGrid &grid = params.grid;
    std::vector<std::string> warnings;
    if (!params.disentangling_regime()) {
        warnings.push_back("W <= P_q/2: the final state stays entangled with the qubits");
    }
    if (!params.initial_qudit && !params.vprep.theta_in_validated_range()) {
        warnings.push_back("theta_v outside [2.5, 2.7]: interpolated peaks may ripple");
    }

    // Step 1.
    const WaveFunction psi0 = momentum_displace(squeezed_vacuum(params.w, grid), -kPi / params.peak_spacing);
    // Step 2.
    const QuditState v = params.qudit_state();
    JointState joint{grid, psi0.samples() * v.amplitudes().transpose()};
    std::vector<double> norms{joint.norm()};

    // Step 3.
    const CMatrix f = qft_matrix(dims).matrix;
    const JointState s3 = apply_qudit(joint, f.adjoint());
    norms.push_back(s3.norm());

    // Step 4: branch k picks up e^{i (2 pi / P_q) q k}.
    JointState s4 = s3;
    for (int b = 0; b < m_dim; ++b) {
        const double kp = 2.0 * kPi * dims.level(b) / params.peak_spacing;
        for (int i = 0; i < grid.n_points(); ++i) {
            s4.branches(i, b) *= std::polar(1.0, kp * grid.q(i));
        }
    }
    norms.push_back(s4.norm());

    // Step 5.
    const JointState s5 = apply_qudit(s4, f);
    norms.push_back(s5.norm());

    // Step 6: branch k moves by k P_q / M.
    JointState s6 = s5;
    double worst_edge = 0.0;
    for (int b = 0; b < m_dim; ++b) {
        const CVector shifted = position_shift(CVector(s5.branches.col(b)), grid, dims.level(b) * params.peak_spacing / m_dim);
        worst_edge = std::max(worst_edge, edge_mass(shifted, grid));
        s6.branches.col(b) = shifted;
    }
    norms.push_back(s6.norm());
    if (worst_edge > 1e-6) {
        std::ostringstream msg;
        msg << "support overflow: boundary mass " << worst_edge << " after the disentangling shift";
        warnings.push_back(msg.str());
    }
    return {psi0, s3, s4, s5, s6, std::move(norms), std::move(warnings)};
}

GridDensityMatrix reduce_oscillator(const JointState &joint) {
    return {joint.grid, joint.branches * joint.branches.adjoint()};
}

JointState analytic_branches(const ProtocolParams &params) {
    params.validate();
    const QuditDims dims(params.n_qubits);
    const int m_dim = dims.dim();
    const PositionGrid &grid = params.grid;
    const QuditState v = params.qudit_state();
    RVector ys(grid.n_points());
    for (int i = 0; i < grid.n_points(); ++i) {
        ys[i] = m_dim * grid.q(i) / params.peak_spacing;
    }
    const CVector vq = interpolate(v, std::span<const double>(ys.data(), ys.size()));
    CMatrix branches(grid.n_points(), m_dim);
    const double w2 = params.w * params.w;
    for (int b = 0; b < m_dim; ++b) {
        const double centre = dims.level(b) * params.peak_spacing / m_dim;
        for (int i = 0; i < grid.n_points(); ++i) {
            const double d = grid.q(i) - centre;
            branches(i, b) = std::exp(-d * d / (2.0 * w2)) * vq[i];
        }
    }
    branches /= std::sqrt(branches.squaredNorm() * grid.dq());
    return {grid, std::move(branches)};
}

GridDensityMatrix analytic_density(const ProtocolParams &params) { return reduce_oscillator(analytic_branches(params)); }

double disentanglement_entropy(const JointState &joint) {
    CMatrix rho = joint.qudit_density();
    rho /= rho.trace().real();
    return von_neumann_entropy(rho);
}

std::vector<ScalingRow> scaling_study(const std::vector<int> &n_list, const std::function<double(int)> &w_rule,
                                      const VPrepParams &vprep) {
    std::vector<ScalingRow> rows;
    for (int n : n_list) {
        ProtocolParams p;
        p.n_qubits = n;
        p.w = w_rule(n);
        p.vprep = vprep;
        p.grid = PositionGrid::for_width(p.w);
        const IdealRun run = run_ideal(p);
        const FitResult fit = fit_gkp(run.final_state.oscillator(), {vprep.phi_v, vprep.omega_v});
        rows.push_back({n, p.w, fit.params.delta, fit.params.kappa, fit.fidelity,
                        fit.params.delta * (1 << n)});
    }
    return rows;
}

}  // namespace gkpforge
