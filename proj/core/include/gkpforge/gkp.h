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

// Approximate GKP states: a comb of Gaussian peaks of width delta at spacing
// 2 sqrt(pi) under a Gaussian envelope of width 1/kappa.

#ifndef GKPFORGE_GKP_H
#define GKPFORGE_GKP_H

#include <array>
#include <functional>

#include "gkpforge/oscillator.h"

namespace gkpforge {

struct GkpParams {
    double delta = 0.3;
    double kappa = 0.3;
    double phi = 0.0;  // peak centres at (2s + phi) sqrt(pi)
};

struct LogicalAmplitudes {
    double phi_v = 0.0;
    double omega_v = 0.0;
};

/// Throws GridTooSmall if the envelope leaves more than 1e-6 of the
/// probability outside the grid, ConfigError for non-positive widths.
WaveFunction gkp_state(const GkpParams &params, const PositionGrid &grid);

/// cos(phi_v/2) G(phi) + sin(phi_v/2) e^{i omega_v} G(phi + 1), normalized.
WaveFunction logical_state(const LogicalAmplitudes &amps, const GkpParams &params,
                           const PositionGrid &grid);

/// Unchecked sample vector of the logical state (normalized on the grid,
/// possibly truncated); used inside the fit where trial envelopes may
/// exceed the grid.
CVector logical_samples(const LogicalAmplitudes &amps, const GkpParams &params,
                        const PositionGrid &grid);

double delta_to_db(double delta);
double kappa_to_db(double kappa);

struct FitOptions {
    double delta_min = 0.05;
    double delta_max = 1.0;
    double kappa_min = 0.05;
    double kappa_max = 1.0;
    int coarse_points = 12;              // log-spaced, per axis
    std::array<double, 3> offsets = {-0.05, 0.0, 0.05};  // coarse phi offsets
    int max_iterations = 2000;
    double simplex_tolerance = 1e-7;
};

struct FitResult {
    GkpParams params;
    double fidelity = 0.0;
    double coarse_fidelity = 0.0;
    int iterations = 0;
    /// Set when the simplex refinement improved the coarse optimum by less
    /// than 1e-6.
    bool nonconvergence_flag = false;

    double delta_db() const { return delta_to_db(params.delta); }
};

/// Maximizes fidelity_pure(rho, logical_state(amps, params)) over
/// (delta, kappa, phi): coarse log-spaced grid, then a Nelder-Mead simplex
/// in (log delta, log kappa, phi). Deterministic.
FitResult fit_gkp(const LowRankDensity &rho, const LogicalAmplitudes &amps,
                  const FitOptions &options = {});
FitResult fit_gkp(const GridDensityMatrix &rho, const LogicalAmplitudes &amps,
                  const FitOptions &options = {});

/// Generic driver: `fidelity_of` maps a normalized trial wavefunction to a
/// fidelity.
FitResult fit_gkp(const PositionGrid &grid, const std::function<double(const CVector &)> &fidelity_of,
                  const LogicalAmplitudes &amps, const FitOptions &options = {});

}  // namespace gkpforge

#endif  // GKPFORGE_GKP_H
