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

// Discrete quadratures of an N-qubit qudit.
//
// Levels |x_k> are labelled by the centered half-integers
// k in K = {-(M-1)/2, ..., -1/2, +1/2, ..., +(M-1)/2}, M = 2^N. Storage order is
// ascending k, which coincides with the binary value of the qubit register
// (qubit n <-> bit n-1, least significant first), so level index b maps to
// k = b - (M-1)/2.

#ifndef GKPFORGE_QUDIT_H
#define GKPFORGE_QUDIT_H

#include <span>
#include <vector>

#include "gkpforge/types.h"

namespace gkpforge {

class QuditDims {
  public:
    explicit QuditDims(int n_qubits);

    int n_qubits() const { return n_qubits_; }
    int dim() const { return dim_; }

    /// Label k of level index b.
    double level(int b) const { return b - 0.5 * (dim_ - 1); }

    bool operator==(const QuditDims &) const = default;

  private:
    int n_qubits_;
    int dim_;
};

/// Normalized amplitude vector over K, ascending.
class QuditState {
  public:
    /// Throws ConfigError unless `amplitudes` has length M and unit norm (1e-12).
    QuditState(QuditDims dims, CVector amplitudes);

    /// Rescales `amplitudes` to unit norm; throws on a zero vector.
    static QuditState normalized(QuditDims dims, CVector amplitudes);
    static QuditState basis(QuditDims dims, int level_index);

    const QuditDims &dims() const { return dims_; }
    const CVector &amplitudes() const { return amplitudes_; }
    Complex operator[](int level_index) const { return amplitudes_[level_index]; }

  private:
    QuditDims dims_;
    CVector amplitudes_;
};

struct QuditOperator {
    CMatrix matrix;
    bool diagonal = false;

    QuditState apply(const QuditState &state) const;
};

struct VPrepParams {
    double theta_v = 2.6;
    double phi_v = 0.0;
    double omega_v = 0.0;

    /// Range in which the interpolated peaks stay free of ripples.
    bool theta_in_validated_range() const { return theta_v >= 2.5 && theta_v <= 2.7; }
};

std::vector<double> index_set(const QuditDims &dims);

/// X_N = -sum_n 2^(n-2) sigma_z^(n); diagonal with spectrum K.
QuditOperator x_operator(const QuditDims &dims);

/// Centered Fourier transform F_N[m][n] = exp(i 2pi (n-1/2)(m-1/2)/M)/sqrt(M).
QuditOperator qft_matrix(const QuditDims &dims);

/// Y_N = F_N X_N F_N^dagger.
QuditOperator y_operator(const QuditDims &dims);

/// D_x(s) = exp(-i (2pi/M) Y_N s), built in the eigenbasis of Y_N.
QuditOperator displacement_dx(const QuditDims &dims, double s);

/// Plane-wave coefficient c_m of the interpolating function. Zero outside
/// the band m in [-M/2, M/2 - 1].
Complex fourier_coeff(const QuditState &state, int m);

/// Trigonometric interpolation v(y) of the points (k, v_k). Period M in y.
Complex interpolate(const QuditState &state, double y);
CVector interpolate(const QuditState &state, std::span<const double> ys);

/// Direct amplitude synthesis of the two-peak state |v>.
///
/// Each peak spans four adjacent levels with amplitudes
/// (cos, sin, sin, cos)(theta_v/2)/sqrt(2): the logical-0 peak sits on
/// k = -3/2..+3/2 (centered at y = 0), the logical-1 peak on the four levels
/// straddling the register boundary (centered at y = M/2). The superposition is
/// cos(phi_v/2)|peak_0> + e^{i omega_v} sin(phi_v/2)|peak_1>. For N = 2 the two
/// peaks overlap and the result is renormalized.
QuditState build_v_state(const QuditDims &dims, const VPrepParams &params);

/// Standard deviation of a peak of v(y), using the phase-aligned amplitude
/// Re(e^{-i arg v(center)} v(y)) as the weight over
/// [center - half_window, center + half_window]. `half_window` <= 0 selects M/4.
double peak_sigma(const QuditState &state, double center, double half_window = 0.0);

/// Fraction of the integrated |v(y)|^2 lying within M/4 of `center`.
double peak_weight(const QuditState &state, double center);

/// Von Neumann entropy (base 2) of a Hermitian, unit-trace matrix.
double von_neumann_entropy(const CMatrix &rho);

}  // namespace gkpforge

#endif  // GKPFORGE_QUDIT_H
