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

#include "gkpforge/gkp.h"

#include <cmath>
#include <string>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

namespace gkpforge {

namespace {

const double kSqrtPi = std::sqrt(kPi);

// Adds one Eq.-2 comb with centre shift `phi` (in units of sqrt(pi)) times `weight`.
void add_comb(CVector &out, const GkpParams &p, double phi, Complex weight, const PositionGrid &grid) {
    const double reach = 12.0 * p.delta;
    const double lo = grid.q_min() - reach;
    const double hi = grid.q_max() + reach;
    const int s_min = static_cast<int>(std::floor((lo / kSqrtPi - phi) / 2.0));
    const int s_max = static_cast<int>(std::ceil((hi / kSqrtPi - phi) / 2.0));
    for (int s = s_min; s <= s_max; ++s) {
        const double c = (2.0 * s + phi) * kSqrtPi;
        const double env = std::exp(-0.5 * (p.kappa * c) * (p.kappa * c));
        if (env * env < 1e-12) {
            continue;
        }
        const int i0 = std::max(0, static_cast<int>(std::floor((c - reach - grid.q_min()) / grid.dq())));
        const int i1 = std::min(grid.n_points() - 1, static_cast<int>(std::ceil((c + reach - grid.q_min()) / grid.dq())));
        const Complex amp = weight * env;
        for (int i = i0; i <= i1; ++i) {
            const double d = grid.q(i) - c;
            out[i] += amp * std::exp(-d * d / (2.0 * p.delta * p.delta));
        }
    }
}

void validate(const GkpParams &p, const PositionGrid &grid) {
    if (!(p.delta > 0.0) || !(p.kappa > 0.0)) {
        throw ConfigError("GKP delta and kappa must be positive");
    }
    // The envelope |psi|^2 ~ exp(-kappa^2 q^2) must fit like a squeezed vacuum of width 1/kappa.
    const double limit = std::min(-grid.q_min(), grid.q_max());
    if (std::erfc(p.kappa * limit) > 1e-6) {
        throw GridTooSmall("grid too small for GKP envelope kappa " + std::to_string(p.kappa));
    }
}

}  // namespace

CVector logical_samples(const LogicalAmplitudes &amps, const GkpParams &params, const PositionGrid &grid) {
    CVector out = CVector::Zero(grid.n_points());
    const double a = std::cos(amps.phi_v / 2.0);
    const double b = std::sin(amps.phi_v / 2.0);
    if (std::abs(a) > 1e-15) {
        CVector g0 = CVector::Zero(grid.n_points());
        add_comb(g0, params, params.phi, 1.0, grid);
        out += a * g0 / std::sqrt(g0.squaredNorm() * grid.dq());
    }
    if (std::abs(b) > 1e-15) {
        CVector g1 = CVector::Zero(grid.n_points());
        add_comb(g1, params, params.phi + 1.0, 1.0, grid);
        out += std::polar(b, amps.omega_v) * g1 / std::sqrt(g1.squaredNorm() * grid.dq());
    }
    const double norm = std::sqrt(out.squaredNorm() * grid.dq());
    return out / norm;
}

WaveFunction gkp_state(const GkpParams &params, const PositionGrid &grid) {
    validate(params, grid);
    CVector out = CVector::Zero(grid.n_points());
    add_comb(out, params, params.phi, 1.0, grid);
    return WaveFunction::normalized(grid, std::move(out));
}

WaveFunction logical_state(const LogicalAmplitudes &amps, const GkpParams &params, const PositionGrid &grid) {
    validate(params, grid);
    return WaveFunction::normalized(grid, logical_samples(amps, params, grid));
}

double delta_to_db(double delta) { return -20.0 * std::log10(delta); }

double kappa_to_db(double kappa) { return -20.0 * std::log10(kappa); }

namespace {

struct Objective {
    const PositionGrid *grid;
    const std::function<double(const CVector &)> *fidelity_of;
    const LogicalAmplitudes *amps;

    double operator()(double delta, double kappa, double phi) const {
        return (*fidelity_of)(logical_samples(*amps, {delta, kappa, phi}, *grid));
    }
};

double simplex_cost(const gsl_vector *x, void *data) {
    const Objective &obj = *static_cast<const Objective *>(data);
    return -obj(std::exp(gsl_vector_get(x, 0)), std::exp(gsl_vector_get(x, 1)), gsl_vector_get(x, 2));
}

}  // namespace

FitResult fit_gkp(const PositionGrid &grid, const std::function<double(const CVector &)> &fidelity_of,
                  const LogicalAmplitudes &amps, const FitOptions &options) {
    if (options.coarse_points < 2 || !(options.delta_min > 0.0) || !(options.kappa_min > 0.0)) {
        throw ConfigError("invalid fit options");
    }
    const Objective obj{&grid, &fidelity_of, &amps};
    FitResult best;
    best.fidelity = -1.0;
    const int n = options.coarse_points;
    for (int i = 0; i < n; ++i) {
        const double delta = options.delta_min * std::pow(options.delta_max / options.delta_min, i / (n - 1.0));
        for (int j = 0; j < n; ++j) {
            const double kappa =
                options.kappa_min * std::pow(options.kappa_max / options.kappa_min, j / (n - 1.0));
            for (double off : options.offsets) {
                const double f = obj(delta, kappa, off);
                if (f > best.fidelity) {
                    best.fidelity = f;
                    best.params = {delta, kappa, off};
                }
            }
        }
    }
    best.coarse_fidelity = best.fidelity;

    gsl_set_error_handler_off();
    gsl_multimin_function fn{&simplex_cost, 3, const_cast<Objective *>(&obj)};
    gsl_vector *x = gsl_vector_alloc(3);
    gsl_vector *step = gsl_vector_alloc(3);
    gsl_vector_set(x, 0, std::log(best.params.delta));
    gsl_vector_set(x, 1, std::log(best.params.kappa));
    gsl_vector_set(x, 2, best.params.phi);
    gsl_vector_set(step, 0, 0.1);
    gsl_vector_set(step, 1, 0.1);
    gsl_vector_set(step, 2, 0.02);
    gsl_multimin_fminimizer *s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 3);
    gsl_multimin_fminimizer_set(s, &fn, x, step);
    int iter = 0;
    int status = GSL_CONTINUE;
    while (status == GSL_CONTINUE && iter < options.max_iterations) {
        ++iter;
        if (gsl_multimin_fminimizer_iterate(s) != GSL_SUCCESS) {
            break;
        }
        status = gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), options.simplex_tolerance);
    }
    const double refined = -s->fval;
    if (refined > best.fidelity) {
        best.fidelity = refined;
        best.params = {std::exp(gsl_vector_get(s->x, 0)), std::exp(gsl_vector_get(s->x, 1)),
                       gsl_vector_get(s->x, 2)};
    }
    best.iterations = iter;
    best.nonconvergence_flag = best.fidelity - best.coarse_fidelity < 1e-6;
    gsl_multimin_fminimizer_free(s);
    gsl_vector_free(step);
    gsl_vector_free(x);
    return best;
}

FitResult fit_gkp(const LowRankDensity &rho, const LogicalAmplitudes &amps, const FitOptions &options) {
    const std::function<double(const CVector &)> f = [&rho](const CVector &psi) { return fidelity_pure(rho, psi); };
    return fit_gkp(rho.grid, f, amps, options);
}

FitResult fit_gkp(const GridDensityMatrix &rho, const LogicalAmplitudes &amps, const FitOptions &options) {
    const double dq = rho.grid.dq();
    const std::function<double(const CVector &)> f = [&rho, dq](const CVector &psi) {
        return psi.dot(rho.entries * psi).real() * dq * dq;
    };
    return fit_gkp(rho.grid, f, amps, options);
}

}  // namespace gkpforge
