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

#include "gkpforge/oscillator.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/FFT>

namespace gkpforge {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Probability outside [-L, L] for |psi|^2 ∝ exp(-q^2 / W^2).
double gaussian_outside(double w, double limit) { return std::erfc(limit / w); }

void require_same_grid(const PositionGrid &a, const PositionGrid &b) {
    if (!(a == b)) {
        throw GridMismatch("states live on different position grids");
    }
}

CVector fft_forward(const CVector &x) {
    Eigen::FFT<double> fft;
    CVector out(x.size());
    fft.fwd(out, x);
    return out;
}

CVector fft_inverse(const CVector &x) {
    Eigen::FFT<double> fft;
    CVector out(x.size());
    fft.inv(out, x);
    return out;
}

}  // namespace

PositionGrid::PositionGrid(double q_min, double q_max, int n_points)
    : q_min_(q_min), q_max_(q_max), n_points_(n_points), dq_(0.0) {
    if (!is_power_of_two(n_points) || n_points < 2) {
        throw ConfigError("grid n_points must be a power of two, got " + std::to_string(n_points));
    }
    if (!(q_max > q_min)) {
        throw ConfigError("grid needs q_max > q_min");
    }
    dq_ = (q_max - q_min) / n_points;
    const double r = -q_min / dq_;
    const double frac = r - std::floor(r);
    const bool on_sample = frac < 1e-9 || frac > 1.0 - 1e-9;
    const bool midway = std::abs(frac - 0.5) < 1e-9;
    if (r < 0.0 || r > n_points || !(on_sample || midway)) {
        throw ConfigError("q = 0 must lie on a grid sample or midway between two samples");
    }
}

PositionGrid PositionGrid::standard() { return PositionGrid(-12.0, 12.0, 2048); }

PositionGrid PositionGrid::for_width(double w) {
    for (int scale = 1; scale <= 4; scale *= 2) {
        PositionGrid g(-12.0 * scale, 12.0 * scale, 2048 * scale);
        if (gaussian_outside(w, g.q_max()) < 1e-6) {
            return g;
        }
    }
    throw GridTooSmall("no default grid holds a squeezed vacuum of width " + std::to_string(w));
}

RVector PositionGrid::q_axis() const {
    RVector q(n_points_);
    for (int i = 0; i < n_points_; ++i) {
        q[i] = this->q(i);
    }
    return q;
}

RVector PositionGrid::p_axis_fft() const {
    RVector p(n_points_);
    const double scale = 2.0 * kPi / (n_points_ * dq_);
    for (int j = 0; j < n_points_; ++j) {
        p[j] = scale * (j < n_points_ / 2 ? j : j - n_points_);
    }
    return p;
}

WaveFunction::WaveFunction(PositionGrid grid, CVector samples) : grid_(grid), samples_(std::move(samples)) {
    if (samples_.size() != grid_.n_points()) {
        throw ConfigError("wave function sample count does not match grid");
    }
    const double norm = samples_.squaredNorm() * grid_.dq();
    if (std::abs(norm - 1.0) > 1e-8) {
        throw ToleranceError("wave function norm " + std::to_string(norm) + " differs from 1");
    }
}

WaveFunction WaveFunction::normalized(PositionGrid grid, CVector samples) {
    const double norm = std::sqrt(samples.squaredNorm() * grid.dq());
    if (norm == 0.0) {
        throw ConfigError("cannot normalize a zero wave function");
    }
    samples /= norm;
    return WaveFunction(grid, std::move(samples));
}

double GridDensityMatrix::trace() const { return entries.trace().real() * grid.dq(); }

double GridDensityMatrix::purity() const { return entries.squaredNorm() * grid.dq() * grid.dq(); }

double LowRankDensity::trace() const { return factors.squaredNorm() * grid.dq(); }

double LowRankDensity::purity() const {
    const CMatrix gram = factors.adjoint() * factors * grid.dq();
    return gram.squaredNorm();
}

GridDensityMatrix LowRankDensity::to_dense() const { return {grid, factors * factors.adjoint()}; }

RVector LowRankDensity::position_density() const { return factors.rowwise().squaredNorm(); }

double WignerGrid::integral() const {
    if (q_axis.size() < 2 || p_axis.size() < 2) {
        return 0.0;
    }
    const double dq = q_axis[1] - q_axis[0];
    const double dp = p_axis[1] - p_axis[0];
    return values.sum() * dq * dp;
}

WaveFunction squeezed_vacuum(double w, const PositionGrid &grid) {
    if (!(w > 0.0)) {
        throw ConfigError("squeezed vacuum width must be positive");
    }
    const double limit = std::min(-grid.q_min(), grid.q_max());
    if (gaussian_outside(w, limit) > 1e-6) {
        throw GridTooSmall("grid too small for squeezed vacuum of width " + std::to_string(w));
    }
    CVector psi(grid.n_points());
    for (int i = 0; i < grid.n_points(); ++i) {
        const double q = grid.q(i);
        psi[i] = std::exp(-q * q / (2.0 * w * w));
    }
    return WaveFunction::normalized(grid, std::move(psi));
}

double width_to_db(double w) { return 20.0 * std::log10(w); }

double db_to_width(double db) { return std::pow(10.0, db / 20.0); }

WaveFunction momentum_displace(const WaveFunction &psi, double p0) {
    CVector out = psi.samples();
    for (int i = 0; i < out.size(); ++i) {
        out[i] *= std::polar(1.0, p0 * psi.grid().q(i));
    }
    return WaveFunction::normalized(psi.grid(), std::move(out));
}

CVector position_shift(const CVector &samples, const PositionGrid &grid, double a) {
    if (a == 0.0) {
        return samples;
    }
    CVector spec = fft_forward(samples);
    const RVector p = grid.p_axis_fft();
    const int n = grid.n_points();
    for (int j = 0; j < n; ++j) {
        if (j == n / 2) {
            // Nyquist bin is shared by +p and -p; keep the symmetric part.
            spec[j] *= std::cos(p[j] * a);
        } else {
            spec[j] *= std::polar(1.0, -p[j] * a);
        }
    }
    return fft_inverse(spec);
}

double edge_mass(const CVector &samples, const PositionGrid &grid, double fraction) {
    const int n = grid.n_points();
    const int edge = std::max(1, static_cast<int>(fraction * n));
    double mass = 0.0;
    for (int i = 0; i < edge; ++i) {
        mass += std::norm(samples[i]) + std::norm(samples[n - 1 - i]);
    }
    return mass * grid.dq();
}

WaveFunction position_shift(const WaveFunction &psi, double a, double *boundary_mass) {
    CVector out = position_shift(psi.samples(), psi.grid(), a);
    if (boundary_mass != nullptr) {
        *boundary_mass = edge_mass(out, psi.grid());
    }
    return WaveFunction::normalized(psi.grid(), std::move(out));
}

double mean_q(const WaveFunction &psi) {
    double m = 0.0;
    for (int i = 0; i < psi.samples().size(); ++i) {
        m += psi.grid().q(i) * std::norm(psi.samples()[i]);
    }
    return m * psi.grid().dq();
}

double variance_q(const WaveFunction &psi) {
    const double m = mean_q(psi);
    double v = 0.0;
    for (int i = 0; i < psi.samples().size(); ++i) {
        const double d = psi.grid().q(i) - m;
        v += d * d * std::norm(psi.samples()[i]);
    }
    return v * psi.grid().dq();
}

namespace {

std::pair<double, double> momentum_moments(const WaveFunction &psi) {
    const CVector spec = fft_forward(psi.samples());
    const RVector p = psi.grid().p_axis_fft();
    double w = 0.0;
    double m1 = 0.0;
    double m2 = 0.0;
    for (int j = 0; j < spec.size(); ++j) {
        const double prob = std::norm(spec[j]);
        w += prob;
        m1 += prob * p[j];
        m2 += prob * p[j] * p[j];
    }
    return {m1 / w, m2 / w};
}

}  // namespace

double mean_p(const WaveFunction &psi) { return momentum_moments(psi).first; }

double variance_p(const WaveFunction &psi) {
    const auto [m1, m2] = momentum_moments(psi);
    return m2 - m1 * m1;
}

RMatrix hermite_functions(int n_max, const PositionGrid &grid) {
    if (n_max < 0) {
        throw ConfigError("hermite_functions needs n_max >= 0");
    }
    const int n = grid.n_points();
    RMatrix h(n, n_max + 1);
    const double c0 = std::pow(kPi, -0.25);
    for (int i = 0; i < n; ++i) {
        const double q = grid.q(i);
        // Run the normalized recurrence on a scaled copy seeded with 1 so the
        // Gaussian prefactor never underflows mid-recurrence; fold it back in
        // via logs at the end.
        double log_scale = -0.5 * q * q + std::log(c0);
        double prev = 0.0;
        double cur = 1.0;
        h(i, 0) = std::exp(log_scale);
        for (int k = 0; k < n_max; ++k) {
            const double next = std::sqrt(2.0 / (k + 1)) * q * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
            prev = cur;
            cur = next;
            const double mag = std::abs(cur);
            if (mag > 1e100) {
                prev /= mag;
                cur /= mag;
                log_scale += std::log(mag);
            }
            h(i, k + 1) = cur * std::exp(log_scale);
        }
    }
    return h;
}

FockVector to_fock(const WaveFunction &psi, int n_max) {
    if (n_max < 1) {
        throw ConfigError("to_fock needs n_max >= 1");
    }
    const RMatrix h = hermite_functions(n_max, psi.grid());
    FockVector f{h.transpose().cast<Complex>() * psi.samples() * psi.grid().dq()};
    const double tail = std::max(std::norm(f.coeffs[n_max]), std::norm(f.coeffs[n_max - 1]));
    if (tail > 1e-8) {
        throw InsufficientCutoff("Fock cutoff " + std::to_string(n_max) + " leaves tail " + std::to_string(tail));
    }
    return f;
}

WaveFunction from_fock(const FockVector &f, const PositionGrid &grid) {
    const RMatrix h = hermite_functions(f.cutoff(), grid);
    return WaveFunction::normalized(grid, h.cast<Complex>() * f.coeffs);
}

LadderOps ladder_ops(int n_max) {
    if (n_max < 1) {
        throw ConfigError("ladder_ops needs n_max >= 1");
    }
    const int d = n_max + 1;
    CMatrix a = CMatrix::Zero(d, d);
    for (int n = 1; n < d; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    CMatrix adag = a.adjoint();
    const double r = 1.0 / std::sqrt(2.0);
    CMatrix q = (a + adag) * r;
    CMatrix p = kI * (adag - a) * r;
    return {std::move(a), std::move(adag), std::move(q), std::move(p)};
}

GridDensityMatrix pure_density(const WaveFunction &psi) {
    return {psi.grid(), psi.samples() * psi.samples().adjoint()};
}

LowRankDensity pure_low_rank(const WaveFunction &psi) { return {psi.grid(), psi.samples()}; }

LowRankDensity fock_density_to_grid(const CMatrix &fock_rho, const PositionGrid &grid, double drop_below) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(fock_rho);
    const RMatrix h = hermite_functions(static_cast<int>(fock_rho.rows()) - 1, grid);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index k = es.eigenvalues().size() - 1; k >= 0; --k) {
        if (es.eigenvalues()[k] > drop_below) {
            keep.push_back(k);
        }
    }
    CMatrix factors(grid.n_points(), static_cast<Eigen::Index>(keep.size()));
    for (size_t c = 0; c < keep.size(); ++c) {
        const Eigen::Index k = keep[c];
        factors.col(static_cast<Eigen::Index>(c)) =
            h.cast<Complex>() * es.eigenvectors().col(k) * std::sqrt(es.eigenvalues()[k]);
    }
    return {grid, std::move(factors)};
}

namespace {

// Rows of the Wigner function; `kernel(i, j)` returns <q_i + y_j | rho | q_i - y_j>.
WignerGrid wigner_rows(const PositionGrid &grid, const std::vector<int> &rows, double p_limit,
                       const std::function<Complex(int, int)> &kernel) {
    const int n = grid.n_points();
    const double dq = grid.dq();
    // y = j dq and the kernel oscillates as e^{-2ipy}, so p_m = pi m / (n dq).
    const double dp = kPi / (n * dq);
    std::vector<int> cols;
    for (int m = -n / 2; m < n / 2; ++m) {
        if (std::abs(m * dp) <= p_limit + 1e-12) {
            cols.push_back(m);
        }
    }
    WignerGrid out;
    out.q_axis.resize(static_cast<Eigen::Index>(rows.size()));
    out.p_axis.resize(static_cast<Eigen::Index>(cols.size()));
    out.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (size_t c = 0; c < cols.size(); ++c) {
        out.p_axis[static_cast<Eigen::Index>(c)] = cols[c] * dp;
    }
    Eigen::FFT<double> fft;
    CVector f(n);
    CVector spec(n);
    for (size_t r = 0; r < rows.size(); ++r) {
        const int i = rows[r];
        out.q_axis[static_cast<Eigen::Index>(r)] = grid.q(i);
        f.setZero();
        const int reach = std::min(i, n - 1 - i);
        for (int j = -reach; j <= reach; ++j) {
            f[(j + n) % n] = kernel(i, j);
        }
        fft.fwd(spec, f);
        for (size_t c = 0; c < cols.size(); ++c) {
            const Complex v = spec[(cols[c] + n) % n];
            out.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v.real() * dq / kPi;
        }
    }
    return out;
}

std::vector<int> window_rows(const PositionGrid &grid, const WignerWindow &window) {
    if (window.q_stride < 1) {
        throw ConfigError("Wigner q_stride must be >= 1");
    }
    std::vector<int> rows;
    // Anchor the stride at q = 0 (or the nearest sample) so the axis is symmetric.
    const int zero = static_cast<int>(std::lround(-grid.q_min() / grid.dq()));
    for (int i = zero % window.q_stride; i < grid.n_points(); i += window.q_stride) {
        if (std::abs(grid.q(i)) <= window.q_limit + 1e-12) {
            rows.push_back(i);
        }
    }
    return rows;
}

}  // namespace

WignerGrid wigner(const GridDensityMatrix &rho, const WignerWindow &window) {
    return wigner_rows(rho.grid, window_rows(rho.grid, window), window.p_limit,
                       [&rho](int i, int j) { return rho.entries(i + j, i - j); });
}

WignerGrid wigner(const LowRankDensity &rho, const WignerWindow &window) {
    return wigner_rows(rho.grid, window_rows(rho.grid, window), window.p_limit, [&rho](int i, int j) {
        return rho.factors.row(i - j).dot(rho.factors.row(i + j));
    });
}

WignerGrid wigner_full(const GridDensityMatrix &rho) {
    std::vector<int> rows(rho.grid.n_points());
    for (int i = 0; i < rho.grid.n_points(); ++i) {
        rows[i] = i;
    }
    return wigner_rows(rho.grid, rows, std::numeric_limits<double>::infinity(),
                       [&rho](int i, int j) { return rho.entries(i + j, i - j); });
}

double fidelity_pure(const GridDensityMatrix &rho, const WaveFunction &psi) {
    require_same_grid(rho.grid, psi.grid());
    const double dq = rho.grid.dq();
    return psi.samples().dot(rho.entries * psi.samples()).real() * dq * dq;
}

double fidelity_pure(const LowRankDensity &rho, const CVector &psi) {
    if (psi.size() != rho.grid.n_points()) {
        throw GridMismatch("state and density have different sample counts");
    }
    const double dq = rho.grid.dq();
    return (rho.factors.adjoint() * psi).squaredNorm() * dq * dq;
}

double fidelity_pure(const LowRankDensity &rho, const WaveFunction &psi) {
    require_same_grid(rho.grid, psi.grid());
    return fidelity_pure(rho, psi.samples());
}

double uhlmann_fidelity(const LowRankDensity &rho, const LowRankDensity &sigma) {
    require_same_grid(rho.grid, sigma.grid);
    const CMatrix overlap = rho.factors.adjoint() * sigma.factors * rho.grid.dq();
    Eigen::JacobiSVD<CMatrix> svd(overlap);
    const double s = svd.singularValues().sum();
    return s * s;
}

}  // namespace gkpforge
