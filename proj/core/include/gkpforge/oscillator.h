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

// Oscillator states on a uniform position grid and in a truncated Fock basis.
//
// Quadratures follow [q, p] = i with vacuum variance 1/2. Squeeze factors in
// dB are 20 log10 of the amplitude width ratio.

#ifndef GKPFORGE_OSCILLATOR_H
#define GKPFORGE_OSCILLATOR_H

#include <string>
#include <vector>

#include "gkpforge/types.h"

namespace gkpforge {

/// Samples q_i = q_min + i dq, i < n_points, dq = (q_max - q_min) / n_points.
/// The grid is treated as periodic by the FFT-based transforms.
class PositionGrid {
  public:
    /// Throws ConfigError unless n_points is a power of two, q_max > q_min, and
    /// q = 0 falls on a sample or midway between two samples.
    PositionGrid(double q_min, double q_max, int n_points);

    /// [-12, 12) with 2048 samples.
    static PositionGrid standard();
    /// Smallest of [-12,12)/2048, [-24,24)/4096, [-48,48)/8192 that holds a
    /// squeezed vacuum of width `w` with less than 1e-6 probability outside.
    static PositionGrid for_width(double w);

    double q_min() const { return q_min_; }
    double q_max() const { return q_max_; }
    int n_points() const { return n_points_; }
    double dq() const { return dq_; }
    double q(int i) const { return q_min_ + i * dq_; }
    RVector q_axis() const;
    /// FFT-ordered momentum samples p_j = 2 pi j / (n dq).
    RVector p_axis_fft() const;

    bool operator==(const PositionGrid &) const = default;

  private:
    double q_min_;
    double q_max_;
    int n_points_;
    double dq_;
};

class WaveFunction {
  public:
    /// Throws ToleranceError unless sum |psi|^2 dq = 1 within 1e-8.
    WaveFunction(PositionGrid grid, CVector samples);
    static WaveFunction normalized(PositionGrid grid, CVector samples);

    const PositionGrid &grid() const { return grid_; }
    const CVector &samples() const { return samples_; }

  private:
    PositionGrid grid_;
    CVector samples_;
};

struct FockVector {
    CVector coeffs;
    int cutoff() const { return static_cast<int>(coeffs.size()) - 1; }
};

/// Dense rho(q_i, q_j); trace convention sum_i rho_ii dq = 1.
struct GridDensityMatrix {
    PositionGrid grid;
    CMatrix entries;

    double trace() const;
    double purity() const;
};

/// rho = C C^dagger on the grid, one column per ensemble member.
struct LowRankDensity {
    PositionGrid grid;
    CMatrix factors;

    double trace() const;
    double purity() const;
    GridDensityMatrix to_dense() const;
    RVector position_density() const;
};

struct WignerGrid {
    RVector q_axis;
    RVector p_axis;
    RMatrix values;  // rows follow q_axis, columns p_axis

    double integral() const;
};

struct WignerWindow {
    double q_limit = 8.0;  // keep |q| <= q_limit
    double p_limit = 8.0;  // keep |p| <= p_limit
    int q_stride = 4;      // keep every q_stride-th grid row
};

struct LadderOps {
    CMatrix a;
    CMatrix adag;
    CMatrix q;
    CMatrix p;
};

/// psi_W(q) proportional to exp(-q^2 / (2 W^2)); position variance W^2 / 2.
/// Throws GridTooSmall if more than 1e-6 of |psi|^2 falls outside the grid.
WaveFunction squeezed_vacuum(double w, const PositionGrid &grid);

double width_to_db(double w);
double db_to_width(double db);

/// Multiplies the samples by exp(i p0 q).
WaveFunction momentum_displace(const WaveFunction &psi, double p0);

/// exp(-i p a) psi, i.e. psi(q) -> psi(q - a), applied in momentum space.
/// If `boundary_mass` is non-null it receives the probability within 4 % of
/// the grid edges after the shift; callers warn when it exceeds 1e-6.
WaveFunction position_shift(const WaveFunction &psi, double a, double *boundary_mass = nullptr);
CVector position_shift(const CVector &samples, const PositionGrid &grid, double a);

/// Probability mass in the outer `fraction` of the grid at both ends.
double edge_mass(const CVector &samples, const PositionGrid &grid, double fraction = 0.01);

double mean_q(const WaveFunction &psi);
double variance_q(const WaveFunction &psi);
double mean_p(const WaveFunction &psi);
double variance_p(const WaveFunction &psi);

/// Normalized Hermite functions phi_n(q_i), shape n_points x (n_max + 1).
RMatrix hermite_functions(int n_max, const PositionGrid &grid);

/// Throws InsufficientCutoff if max(|c_nmax|^2, |c_nmax-1|^2) >= 1e-8.
FockVector to_fock(const WaveFunction &psi, int n_max);
WaveFunction from_fock(const FockVector &f, const PositionGrid &grid);

LadderOps ladder_ops(int n_max);

GridDensityMatrix pure_density(const WaveFunction &psi);
LowRankDensity pure_low_rank(const WaveFunction &psi);

/// Grid form of a Fock-basis density matrix, via its eigen-decomposition.
/// Components with weight below `drop_below` are discarded.
LowRankDensity fock_density_to_grid(const CMatrix &fock_rho, const PositionGrid &grid,
                                    double drop_below = 1e-14);

/// W(q, p) = (1/pi) int <q+y|rho|q-y> e^{-2ipy} dy on the grid, one FFT per row.
WignerGrid wigner(const GridDensityMatrix &rho, const WignerWindow &window = {});
/// Full-resolution Wigner function (every q row, every FFT momentum).
WignerGrid wigner(const LowRankDensity &rho, const WignerWindow &window = {});
WignerGrid wigner_full(const GridDensityMatrix &rho);

/// <psi|rho|psi>; throws GridMismatch for different grids.
double fidelity_pure(const GridDensityMatrix &rho, const WaveFunction &psi);
double fidelity_pure(const LowRankDensity &rho, const WaveFunction &psi);
double fidelity_pure(const LowRankDensity &rho, const CVector &psi);

/// Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2 from the factors.
double uhlmann_fidelity(const LowRankDensity &rho, const LowRankDensity &sigma);

}  // namespace gkpforge

#endif  // GKPFORGE_OSCILLATOR_H
