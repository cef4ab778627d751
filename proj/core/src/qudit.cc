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

#include "gkpforge/qudit.h"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace gkpforge {

QuditDims::QuditDims(int n_qubits) : n_qubits_(n_qubits), dim_(0) {
    if (n_qubits < 1 || n_qubits > 12) {
        throw ConfigError("n_qubits must be in [1, 12], got " + std::to_string(n_qubits));
    }
    dim_ = 1 << n_qubits;
}

QuditState::QuditState(QuditDims dims, CVector amplitudes) : dims_(dims), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != dims_.dim()) {
        throw ConfigError("qudit state needs " + std::to_string(dims_.dim()) + " amplitudes");
    }
    if (std::abs(amplitudes_.norm() - 1.0) > 1e-12) {
        throw ConfigError("qudit state is not normalized");
    }
}

QuditState QuditState::normalized(QuditDims dims, CVector amplitudes) {
    double n = amplitudes.norm();
    if (n == 0.0) {
        throw ConfigError("cannot normalize a zero qudit state");
    }
    amplitudes /= n;
    return QuditState(dims, std::move(amplitudes));
}

QuditState QuditState::basis(QuditDims dims, int level_index) {
    CVector a = CVector::Zero(dims.dim());
    a[level_index] = 1.0;
    return QuditState(dims, std::move(a));
}

QuditState QuditOperator::apply(const QuditState &state) const {
    CVector out = diagonal ? CVector(matrix.diagonal().cwiseProduct(state.amplitudes()))
                           : CVector(matrix * state.amplitudes());
    return QuditState::normalized(state.dims(), std::move(out));
}

std::vector<double> index_set(const QuditDims &dims) {
    std::vector<double> k(dims.dim());
    for (int b = 0; b < dims.dim(); ++b) {
        k[b] = dims.level(b);
    }
    return k;
}

QuditOperator x_operator(const QuditDims &dims) {
    // -sum_n 2^(n-2) sigma_z^(n) with sigma_z|0> = +|0>; qubit n is bit n-1.
    CMatrix x = CMatrix::Zero(dims.dim(), dims.dim());
    for (int b = 0; b < dims.dim(); ++b) {
        double eig = 0.0;
        for (int n = 1; n <= dims.n_qubits(); ++n) {
            double z = ((b >> (n - 1)) & 1) ? -1.0 : 1.0;
            eig -= std::ldexp(1.0, n - 2) * z;
        }
        x(b, b) = eig;
    }
    return {x, true};
}

QuditOperator qft_matrix(const QuditDims &dims) {
    const int m_dim = dims.dim();
    CMatrix f(m_dim, m_dim);
    const double scale = 1.0 / std::sqrt(static_cast<double>(m_dim));
    for (int row = 0; row < m_dim; ++row) {
        for (int col = 0; col < m_dim; ++col) {
            // (n - 1/2)(m - 1/2) is an integer product; reduce it mod M before
            // forming the phase to keep the argument small.
            long a = static_cast<long>(std::lround(dims.level(col) - 0.5));
            long b = static_cast<long>(std::lround(dims.level(row) - 0.5));
            long prod = ((a * b) % m_dim + m_dim) % m_dim;
            f(row, col) = std::polar(scale, 2.0 * kPi * static_cast<double>(prod) / m_dim);
        }
    }
    return {f, false};
}

QuditOperator y_operator(const QuditDims &dims) {
    CMatrix f = qft_matrix(dims).matrix;
    CMatrix x = x_operator(dims).matrix;
    return {f * x * f.adjoint(), false};
}

QuditOperator displacement_dx(const QuditDims &dims, double s) {
    // Y_N = F X_N F^dagger, so exp(-i 2pi Y s / M) = F diag(e^{-i 2pi k s / M}) F^dagger.
    CMatrix f = qft_matrix(dims).matrix;
    CVector phases(dims.dim());
    for (int b = 0; b < dims.dim(); ++b) {
        phases[b] = std::polar(1.0, -2.0 * kPi * dims.level(b) * s / dims.dim());
    }
    return {f * phases.asDiagonal() * f.adjoint(), false};
}

namespace {

// Band of the interpolant: integer frequencies j in [-M/2, M/2 - 1].
CVector band_coefficients(const QuditState &state) {
    const QuditDims &dims = state.dims();
    const int m_dim = dims.dim();
    CVector c(m_dim);
    const double scale = 1.0 / std::sqrt(static_cast<double>(m_dim));
    for (int j = 0; j < m_dim; ++j) {
        const int freq = j - m_dim / 2;
        Complex acc = 0.0;
        for (int b = 0; b < m_dim; ++b) {
            acc += state[b] * std::polar(1.0, -2.0 * kPi * freq * dims.level(b) / m_dim);
        }
        c[j] = acc * scale;
    }
    return c;
}

}  // namespace

Complex fourier_coeff(const QuditState &state, int m) {
    const int m_dim = state.dims().dim();
    if (m < -m_dim / 2 || m > m_dim / 2 - 1) {
        return 0.0;
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(m_dim));
    Complex acc = 0.0;
    for (int b = 0; b < m_dim; ++b) {
        acc += state[b] * std::polar(1.0, -2.0 * kPi * m * state.dims().level(b) / m_dim);
    }
    return acc * scale;
}

CVector interpolate(const QuditState &state, std::span<const double> ys) {
    const int m_dim = state.dims().dim();
    const CVector c = band_coefficients(state);
    const double scale = 1.0 / std::sqrt(static_cast<double>(m_dim));
    CVector out(static_cast<Eigen::Index>(ys.size()));
    for (size_t i = 0; i < ys.size(); ++i) {
        // Sum c_j e^{i 2 pi j y / M} by stepping the phase from j = -M/2.
        const double theta = 2.0 * kPi * ys[i] / m_dim;
        const Complex step = std::polar(1.0, theta);
        Complex phase = std::polar(1.0, -theta * (m_dim / 2));
        Complex acc = 0.0;
        for (int j = 0; j < m_dim; ++j) {
            acc += c[j] * phase;
            phase *= step;
        }
        out[static_cast<Eigen::Index>(i)] = acc * scale;
    }
    return out;
}

Complex interpolate(const QuditState &state, double y) {
    return interpolate(state, std::span<const double>(&y, 1))[0];
}

QuditState build_v_state(const QuditDims &dims, const VPrepParams &params) {
    if (dims.n_qubits() < 2) {
        throw ConfigError("build_v_state needs at least 2 qubits to resolve two peaks");
    }
    const int m_dim = dims.dim();
    const double c = std::cos(params.theta_v / 2.0);
    const double s = std::sin(params.theta_v / 2.0);
    const int half = m_dim / 2;
    CVector peak0 = CVector::Zero(m_dim);
    const double norm = 1.0 / std::sqrt(2.0);
    peak0[(half - 2 + m_dim) % m_dim] += c * norm;
    peak0[half - 1] += s * norm;
    peak0[half] += s * norm;
    peak0[(half + 1) % m_dim] += c * norm;
    // Flipping the most significant qubit moves the peak by M/2.
    CVector peak1 = CVector::Zero(m_dim);
    for (int b = 0; b < m_dim; ++b) {
        peak1[b ^ half] = peak0[b];
    }
    CVector v = std::cos(params.phi_v / 2.0) * peak0 +
                std::polar(std::sin(params.phi_v / 2.0), params.omega_v) * peak1;
    return QuditState::normalized(dims, std::move(v));
}

namespace {

RVector window_samples(double center, double half_window, int n) {
    RVector y(n);
    for (int i = 0; i < n; ++i) {
        y[i] = center - half_window + 2.0 * half_window * i / (n - 1);
    }
    return y;
}

}  // namespace

double peak_sigma(const QuditState &state, double center, double half_window) {
    if (half_window <= 0.0) {
        half_window = state.dims().dim() / 4.0;
    }
    const int n = 4001;
    const RVector y = window_samples(center, half_window, n);
    const CVector v = interpolate(state, std::span<const double>(y.data(), n));
    const Complex align = std::polar(1.0, -std::arg(interpolate(state, center)));
    double w_sum = 0.0;
    double m1 = 0.0;
    double m2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double w = (align * v[i]).real();
        const double d = y[i] - center;
        w_sum += w;
        m1 += w * d;
        m2 += w * d * d;
    }
    const double mean = m1 / w_sum;
    return std::sqrt(m2 / w_sum - mean * mean);
}

double peak_weight(const QuditState &state, double center) {
    const int m_dim = state.dims().dim();
    const int n = 8192;
    // One full period [center - M/2, center + M/2).
    RVector y(n);
    for (int i = 0; i < n; ++i) {
        y[i] = center - m_dim / 2.0 + static_cast<double>(m_dim) * i / n;
    }
    const CVector v = interpolate(state, std::span<const double>(y.data(), n));
    double inside = 0.0;
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        const double p = std::norm(v[i]);
        total += p;
        if (std::abs(y[i] - center) <= m_dim / 4.0) {
            inside += p;
        }
    }
    return inside / total;
}

double von_neumann_entropy(const CMatrix &rho) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(rho, Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double lambda = es.eigenvalues()[i];
        if (lambda > 1e-15) {
            s -= lambda * std::log2(lambda);
        }
    }
    return s;
}

}  // namespace gkpforge
