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

#include <array>
#include <bit>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include "gkpforge/circuit.h"
#include "gkpforge/dispersive.h"

namespace gkpforge {

namespace {

// sigma_z eigenvalue of qubit n (1-based) in register level b.
double z_of(int b, int n) { return ((b >> (n - 1)) & 1) ? -1.0 : 1.0; }

// Tridiagonal (number_term * a^+a + alpha a^+ + alpha* a) stored as three bands.
struct Tridiag {
    std::vector<Complex> lower;  // (n+1, n)
    std::vector<Complex> diag;   // (n, n)
    std::vector<Complex> upper;  // (n, n+1)
};

Tridiag drive_operator(int fock, Complex alpha, double number_term) {
    Tridiag t{std::vector<Complex>(fock, 0.0), std::vector<Complex>(fock, 0.0), std::vector<Complex>(fock, 0.0)};
    for (int n = 0; n < fock; ++n) {
        t.diag[n] = number_term * n;
        if (n + 1 < fock) {
            const double s = std::sqrt(static_cast<double>(n + 1));
            t.lower[n] = alpha * s;
            t.upper[n] = std::conj(alpha) * s;
        }
    }
    return t;
}

// Banded operator on the joint space, block diagonal over register levels:
// band[d + 2][r] holds entry (r, r + d) and is zero where r + d leaves the block.
struct Bands {
    std::array<CVector, 5> band;
    int reach = 2;  // outermost nonzero diagonal

    CVector &operator[](int i) { return band[i]; }
    const CVector &operator[](int i) const { return band[i]; }

    void update_reach() {
        reach = 0;
        for (int d = 1; d <= 2; ++d) {
            if (band[2 + d].squaredNorm() > 0.0 || band[2 - d].squaredNorm() > 0.0) {
                reach = d;
            }
        }
    }
};

Bands zero_bands(int dim) {
    Bands b;
    for (CVector &v : b.band) {
        v = CVector::Zero(dim);
    }
    return b;
}

// Entry (n, n + d) of T^power for the tridiagonal T, power 1 or 2.
Complex tridiag_entry(const Tridiag &t, int n, int d, int power) {
    const int f = static_cast<int>(t.diag.size());
    auto entry = [&](int r, int c) -> Complex {
        if (r < 0 || c < 0 || r >= f || c >= f) {
            return 0.0;
        }
        if (r == c) {
            return t.diag[r];
        }
        if (r == c + 1) {
            return t.lower[c];
        }
        if (c == r + 1) {
            return t.upper[r];
        }
        return 0.0;
    };
    const int m = n + d;
    if (m < 0 || m >= f) {
        return 0.0;
    }
    if (power == 1) {
        return entry(n, m);
    }
    Complex acc = 0.0;
    for (int k = std::max(n, m) - 1; k <= std::min(n, m) + 1; ++k) {
        acc += entry(n, k) * entry(k, m);
    }
    return acc;
}

// o = B x_c for one column x_c, B banded.
template <typename Out, typename In>
void left_column(const Bands &b, const In &xc, Out &&o) {
    const Eigen::Index dim = xc.size();
    o = b[2].cwiseProduct(xc);
    for (int d = 1; d <= b.reach; ++d) {
        const Eigen::Index n = dim - d;
        o.head(n) += b[2 + d].head(n).cwiseProduct(xc.tail(n));
        o.tail(n) += b[2 - d].tail(n).cwiseProduct(xc.head(n));
    }
}

// o += (x B^+) column c.
template <typename Out>
void right_adjoint_column(const Bands &b, const CMatrix &x, Eigen::Index c, Out &&o) {
    for (int d = -b.reach; d <= b.reach; ++d) {
        const Eigen::Index cc = c + d;
        if (cc < 0 || cc >= x.cols()) {
            continue;
        }
        const Complex coef = std::conj(b[2 + d][c]);
        if (coef != 0.0) {
            o += coef * x.col(cc);
        }
    }
}

CMatrix register_z(int n_qubits, int n) {
    const int m = 1 << n_qubits;
    CMatrix z = CMatrix::Zero(m, m);
    for (int b = 0; b < m; ++b) {
        z(b, b) = z_of(b, n);
    }
    return z;
}

CMatrix register_lower(int n_qubits, int n) {
    // sigma_- = |1><0| on qubit n.
    const int m = 1 << n_qubits;
    CMatrix s = CMatrix::Zero(m, m);
    const int bit = 1 << (n - 1);
    for (int b = 0; b < m; ++b) {
        if (!(b & bit)) {
            s(b | bit, b) = 1.0;
        }
    }
    return s;
}

CMatrix dissipator(const CMatrix &l, const CMatrix &rho) {
    const CMatrix ldl = l.adjoint() * l;
    return l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl);
}

}  // namespace

double JointDensityMatrix::trace() const { return rho.trace().real(); }

double JointDensityMatrix::hermiticity_error() const { return (rho - rho.adjoint()).cwiseAbs().maxCoeff(); }

double JointDensityMatrix::purity() const { return (rho * rho).trace().real(); }

double JointDensityMatrix::min_eigenvalue() const {
    const CMatrix h = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

CMatrix JointDensityMatrix::oscillator_fock() const {
    const int f = fock_cutoff + 1;
    const int m = 1 << n_qubits;
    CMatrix out = CMatrix::Zero(f, f);
    for (int b = 0; b < m; ++b) {
        out += rho.block(b * f, b * f, f, f);
    }
    return out;
}

CMatrix effective_hamiltonian(const SimConfig &config, Complex alpha) {
    const LadderOps ops = ladder_ops(config.fock_cutoff);
    CMatrix k = alpha * ops.adag + std::conj(alpha) * ops.a;
    if (config.number_coupling) {
        k += ops.adag * ops.a;
    }
    const int dim = config.dim() * config.fock_dim();
    CMatrix h = CMatrix::Zero(dim, dim);
    for (int n = 1; n <= config.n_qubits; ++n) {
        h += 0.5 * config.chi_n(n) * Eigen::kroneckerProduct(register_z(config.n_qubits, n), k).eval();
    }
    return h;
}

CMatrix lindblad_rhs(const CMatrix &rho, const CMatrix &h, const SimConfig &config, Complex alpha) {
    const LadderOps ops = ladder_ops(config.fock_cutoff);
    const CMatrix reg_id = CMatrix::Identity(config.dim(), config.dim());
    const CMatrix fock_id = CMatrix::Identity(config.fock_dim(), config.fock_dim());
    CMatrix out = -kI * (h * rho - rho * h);
    const NoiseRates &r = config.noise;
    if (r.kappa_loss > 0.0) {
        out += r.kappa_loss * dissipator(Eigen::kroneckerProduct(reg_id, ops.a).eval(), rho);
    }
    if (r.kappa_dephase > 0.0) {
        const CMatrix l = (ops.adag + std::conj(alpha) * fock_id) * (ops.a + alpha * fock_id);
        out += 2.0 * r.kappa_dephase * dissipator(Eigen::kroneckerProduct(reg_id, l).eval(), rho);
    }
    for (int n = 1; n <= config.n_qubits; ++n) {
        if (r.gamma_decay > 0.0) {
            const CMatrix l = Eigen::kroneckerProduct(register_lower(config.n_qubits, n), fock_id);
            out += r.gamma_decay * dissipator(l, rho);
        }
        if (r.gamma_dephase > 0.0) {
            const CMatrix l = 0.5 * Eigen::kroneckerProduct(register_z(config.n_qubits, n), fock_id).eval();
            out += 2.0 * r.gamma_dephase * dissipator(l, rho);
        }
    }
    return out;
}

LindbladGenerator::LindbladGenerator(const SimConfig &config)
    : levels_(config.dim()), fock_(config.fock_dim()), config_(config) {
    level_coupling_.resize(levels_);
    decay_diag_.resize(levels_);
    for (int b = 0; b < levels_; ++b) {
        double h = 0.0;
        int zeros = 0;
        for (int n = 1; n <= config.n_qubits; ++n) {
            h += 0.5 * config.chi_n(n) * z_of(b, n);
            zeros += z_of(b, n) > 0.0 ? 1 : 0;
        }
        level_coupling_[b] = h;
        decay_diag_[b] = -0.5 * config.noise.gamma_decay * zeros;
    }
}

void LindbladGenerator::apply(const CMatrix &rho, Complex alpha, CMatrix &out) const {
    const NoiseRates &r = config_.noise;
    const int f = fock_;
    const int dim = levels_ * f;
    // Non-Hermitian generator A = -iH - (1/2) sum L^+L is block diagonal and banded;
    // d rho = A rho + rho A^+ + jump terms.
    const Tridiag k = drive_operator(f, alpha, config_.number_coupling ? 1.0 : 0.0);
    const Tridiag lt = drive_operator(f, alpha, 1.0);
    Bands a = zero_bands(dim);
    Bands l = zero_bands(dim);
    for (int b = 0; b < levels_; ++b) {
        for (int n = 0; n < f; ++n) {
            const int row = b * f + n;
            for (int d = -2; d <= 2; ++d) {
                Complex v = -kI * level_coupling_[b] * tridiag_entry(k, n, d, 1);
                if (r.kappa_dephase > 0.0) {
                    v -= r.kappa_dephase * tridiag_entry(lt, n, d, 2);
                    l[d + 2][row] = tridiag_entry(lt, n, d, 1);
                }
                if (d == 0) {
                    v += decay_diag_[b] - 0.5 * r.kappa_loss * n;
                }
                a[d + 2][row] = v;
            }
        }
    }
    a.update_reach();
    l.update_reach();
    out.resize(dim, dim);
    const bool sandwich = r.kappa_dephase > 0.0;
    if (sandwich) {
        scratch_.resize(dim, dim);
        for (Eigen::Index c = 0; c < dim; ++c) {
            left_column(l, rho.col(c), scratch_.col(c));
        }
    }
    RVector s = RVector::Zero(dim);
    for (int b = 0; b < levels_; ++b) {
        for (int n = 0; n + 1 < f; ++n) {
            s[b * f + n] = std::sqrt(static_cast<double>(n + 1));
        }
    }
    // Each output column only touches nearby input columns, so one pass keeps it in cache.
    for (Eigen::Index c = 0; c < dim; ++c) {
        auto o = out.col(c);
        left_column(a, rho.col(c), o);
        right_adjoint_column(a, rho, c, o);
        const int bj = static_cast<int>(c / f);
        if (r.kappa_loss > 0.0 && s[c] != 0.0) {
            // a rho a^+
            o.head(dim - 1) += (r.kappa_loss * s[c]) * s.head(dim - 1).cwiseProduct(rho.col(c + 1).tail(dim - 1));
        }
        if (sandwich) {
            // 2 kappa_phi L rho L with L Hermitian.
            CVector tmp = CVector::Zero(dim);
            right_adjoint_column(l, scratch_, c, tmp);
            o += (2.0 * r.kappa_dephase) * tmp;
        }
        if (r.gamma_dephase > 0.0) {
            for (int bi = 0; bi < levels_; ++bi) {
                const int diff = std::popcount(static_cast<unsigned>(bi ^ bj));
                if (diff > 0) {
                    o.segment(bi * f, f) -= (r.gamma_dephase * diff) * rho.col(c).segment(bi * f, f);
                }
            }
        }
        if (r.gamma_decay > 0.0) {
            // sigma_- rho sigma_+ feeds block (bi|bit, bj|bit) from (bi, bj).
            for (int n = 1; n <= config_.n_qubits; ++n) {
                const int bit = 1 << (n - 1);
                if (!(bj & bit)) {
                    continue;
                }
                const Eigen::Index src = c - static_cast<Eigen::Index>(bit) * f;
                for (int bi = 0; bi < levels_; ++bi) {
                    if (bi & bit) {
                        o.segment(bi * f, f) += r.gamma_decay * rho.col(src).segment((bi ^ bit) * f, f);
                    }
                }
            }
        }
    }
}

namespace {

struct BlockTerms {
    Bands a_row;  // A_i restricted to one Fock block
    Bands a_col;  // A_j
    Bands l;      // dephasing operator, shared by all blocks
    RVector s;    // sqrt(n + 1), zero on the last level
    double kappa_loss = 0.0;
    double kappa_dephase = 0.0;
    double scalar = 0.0;  // -gamma_phi times the number of differing qubits
};

void block_rhs(const BlockTerms &t, const CMatrix &x, CMatrix &lx, CMatrix &out) {
    const Eigen::Index f = x.rows();
    if (t.kappa_dephase > 0.0) {
        for (Eigen::Index c = 0; c < f; ++c) {
            left_column(t.l, x.col(c), lx.col(c));
        }
    }
    for (Eigen::Index c = 0; c < f; ++c) {
        auto o = out.col(c);
        left_column(t.a_row, x.col(c), o);
        right_adjoint_column(t.a_col, x, c, o);
        if (t.kappa_loss > 0.0 && t.s[c] != 0.0) {
            o.head(f - 1) += (t.kappa_loss * t.s[c]) * t.s.head(f - 1).cwiseProduct(x.col(c + 1).tail(f - 1));
        }
        if (t.kappa_dephase > 0.0) {
            for (int d = -1; d <= 1; ++d) {
                const Eigen::Index cc = c + d;
                if (cc >= 0 && cc < f) {
                    o += (2.0 * t.kappa_dephase * std::conj(t.l[2 + d][c])) * lx.col(cc);
                }
            }
        }
        if (t.scalar != 0.0) {
            o += t.scalar * x.col(c);
        }
    }
}

// Bands of A = -iH - (1/2) sum L^+L on the Fock block of one register level.
Bands block_bands(const SimConfig &config, double coupling, double decay, Complex alpha) {
    const NoiseRates &r = config.noise;
    const int f = config.fock_dim();
    const Tridiag k = drive_operator(f, alpha, config.number_coupling ? 1.0 : 0.0);
    const Tridiag lt = drive_operator(f, alpha, 1.0);
    Bands a = zero_bands(f);
    for (int n = 0; n < f; ++n) {
        for (int d = -2; d <= 2; ++d) {
            Complex v = -kI * coupling * tridiag_entry(k, n, d, 1);
            if (r.kappa_dephase > 0.0) {
                v -= r.kappa_dephase * tridiag_entry(lt, n, d, 2);
            }
            if (d == 0) {
                v += decay - 0.5 * r.kappa_loss * n;
            }
            a[d + 2][n] = v;
        }
    }
    a.update_reach();
    return a;
}

}  // namespace

void LindbladGenerator::evolve(CMatrix &rho, Complex alpha, double h, long steps) const {
    if (steps <= 0) {
        return;
    }
    const NoiseRates &r = config_.noise;
    if (r.gamma_decay > 0.0) {
        const Eigen::Index dim = rho.rows();
        CMatrix k(dim, dim), next(dim, dim), stage(dim, dim);
        for (long i = 0; i < steps; ++i) {
            apply(rho, alpha, k);
            next = rho + (h / 6.0) * k;
            stage = rho + (0.5 * h) * k;
            apply(stage, alpha, k);
            next += (h / 3.0) * k;
            stage = rho + (0.5 * h) * k;
            apply(stage, alpha, k);
            next += (h / 3.0) * k;
            stage = rho + h * k;
            apply(stage, alpha, k);
            rho = next + (h / 6.0) * k;
        }
        return;
    }
    const int f = fock_;
    std::vector<Bands> rows(levels_);
    for (int b = 0; b < levels_; ++b) {
        rows[b] = block_bands(config_, level_coupling_[b], decay_diag_[b], alpha);
    }
    BlockTerms t;
    t.l = zero_bands(f);
    const Tridiag lt = drive_operator(f, alpha, 1.0);
    for (int n = 0; n < f; ++n) {
        for (int d = -2; d <= 2; ++d) {
            t.l[d + 2][n] = tridiag_entry(lt, n, d, 1);
        }
    }
    t.l.update_reach();
    t.s = RVector::Zero(f);
    for (int n = 0; n + 1 < f; ++n) {
        t.s[n] = std::sqrt(static_cast<double>(n + 1));
    }
    t.kappa_loss = r.kappa_loss;
    t.kappa_dephase = r.kappa_dephase;
    CMatrix x(f, f), k(f, f), next(f, f), stage(f, f), lx(f, f);
    for (int bj = 0; bj < levels_; ++bj) {
        for (int bi = bj; bi < levels_; ++bi) {
            t.a_row = rows[bi];
            t.a_col = rows[bj];
            t.scalar = -r.gamma_dephase * std::popcount(static_cast<unsigned>(bi ^ bj));
            x = rho.block(bi * f, bj * f, f, f);
            for (long i = 0; i < steps; ++i) {
                block_rhs(t, x, lx, k);
                next = x + (h / 6.0) * k;
                stage = x + (0.5 * h) * k;
                block_rhs(t, stage, lx, k);
                next += (h / 3.0) * k;
                stage = x + (0.5 * h) * k;
                block_rhs(t, stage, lx, k);
                next += (h / 3.0) * k;
                stage = x + h * k;
                block_rhs(t, stage, lx, k);
                x = next + (h / 6.0) * k;
            }
            rho.block(bi * f, bj * f, f, f) = x;
            if (bi != bj) {
                rho.block(bj * f, bi * f, f, f) = x.adjoint();
            } else {
                // Diagonal blocks stay Hermitian up to rounding; remove it.
                rho.block(bi * f, bi * f, f, f) = 0.5 * (x + x.adjoint());
            }
        }
    }
}

CMatrix qubit_op_unitary(QubitOp op, const SimConfig &config) {
    const QuditDims dims(config.n_qubits);
    switch (op) {
        case QubitOp::kPrepareV:
            return circuit_unitary(u_v_circuit(dims, config.vprep), config.n_qubits);
        case QubitOp::kInverseQft:
            return qft_matrix(dims).matrix.adjoint();
        case QubitOp::kQft:
            return qft_matrix(dims).matrix;
        case QubitOp::kGlobalFlip: {
            const int m = dims.dim();
            CMatrix x = CMatrix::Zero(m, m);
            for (int b = 0; b < m; ++b) {
                x(m - 1 - b, b) = 1.0;
            }
            return x;
        }
    }
    throw ConfigError("unknown qubit operation");
}

void apply_qubit_unitary(const CMatrix &u, JointDensityMatrix &state) {
    const int m = 1 << state.n_qubits;
    const int f = state.fock_cutoff + 1;
    if (u.rows() != m || u.cols() != m) {
        throw ConfigError("qubit unitary has the wrong size");
    }
    CMatrix t = CMatrix::Zero(state.rho.rows(), state.rho.cols());
    for (int i = 0; i < m; ++i) {
        for (int k = 0; k < m; ++k) {
            if (u(i, k) != 0.0) {
                t.middleRows(i * f, f) += u(i, k) * state.rho.middleRows(k * f, f);
            }
        }
    }
    CMatrix out = CMatrix::Zero(t.rows(), t.cols());
    for (int j = 0; j < m; ++j) {
        for (int l = 0; l < m; ++l) {
            if (u(j, l) != 0.0) {
                out.middleCols(j * f, f) += std::conj(u(j, l)) * t.middleCols(l * f, f);
            }
        }
    }
    state.rho = std::move(out);
}

}  // namespace gkpforge
