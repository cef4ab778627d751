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

#include <cmath>

#include "gtest/gtest.h"

using namespace gkpforge;

namespace {

WaveFunction hermite_state(int n, const PositionGrid &grid) {
    const RMatrix h = hermite_functions(n, grid);
    return WaveFunction::normalized(grid, h.col(n).cast<Complex>());
}

double factorial_ratio(int n) {
    // sqrt((2n)!) / (2^n n!)
    double r = 1.0;
    for (int k = 1; k <= n; ++k) {
        r *= std::sqrt((2.0 * k - 1.0) * (2.0 * k)) / (2.0 * k);
    }
    return r;
}

}  // namespace

TEST(oscillator, grid_validation) {
    EXPECT_NO_THROW(PositionGrid(-12, 12, 2048));
    EXPECT_THROW(PositionGrid(-12, 12, 1000), ConfigError);
    EXPECT_THROW(PositionGrid(12, -12, 2048), ConfigError);
    EXPECT_THROW(PositionGrid(-10, 12, 2048), ConfigError);
    const PositionGrid g = PositionGrid::standard();
    EXPECT_EQ(g.n_points(), 2048);
    EXPECT_DOUBLE_EQ(g.dq(), 24.0 / 2048);
    EXPECT_EQ(g.q(1024), 0.0);
}

TEST(oscillator, grid_for_width) {
    EXPECT_EQ(PositionGrid::for_width(1.0), PositionGrid::standard());
    EXPECT_EQ(PositionGrid::for_width(3.2), PositionGrid::standard());
    EXPECT_EQ(PositionGrid::for_width(5.01).q_max(), 24.0);
    EXPECT_THROW(squeezed_vacuum(5.01, PositionGrid::standard()), GridTooSmall);
}

TEST(oscillator, db_conversion) {
    EXPECT_NEAR(width_to_db(3.2), 10.1, 0.01);
    EXPECT_NEAR(width_to_db(5.01), 14.0, 0.01);
    EXPECT_NEAR(db_to_width(width_to_db(2.3)), 2.3, 1e-14);
    EXPECT_NEAR(-width_to_db(0.39), 8.2, 0.05);
    EXPECT_NEAR(-width_to_db(0.19), 14.4, 0.05);
}

TEST(oscillator, wavefunction_norm_checked) {
    const PositionGrid g = PositionGrid::standard();
    EXPECT_THROW(WaveFunction(g, CVector::Ones(g.n_points())), ToleranceError);
    EXPECT_THROW(WaveFunction::normalized(g, CVector::Ones(5)), Error);
}

TEST(oscillator, squeezed_vacuum_moments) {
    for (double w : {0.5, 1.0, 2.0, 3.2}) {
        const WaveFunction psi = squeezed_vacuum(w, PositionGrid(-24, 24, 4096));
        EXPECT_NEAR(mean_q(psi), 0.0, 1e-12);
        EXPECT_NEAR(mean_p(psi), 0.0, 1e-12);
        EXPECT_NEAR(variance_q(psi), w * w / 2.0, 1e-9);
        EXPECT_NEAR(variance_p(psi), 1.0 / (2.0 * w * w), 1e-9);
        EXPECT_NEAR(variance_q(psi) / variance_p(psi), std::pow(w, 4), 1e-6 * std::pow(w, 4));
    }
}

TEST(oscillator, momentum_kick) {
    const PositionGrid g = PositionGrid::standard();
    const WaveFunction psi = momentum_displace(squeezed_vacuum(1.3, g), -1.7);
    EXPECT_NEAR(mean_p(psi), -1.7, 1e-9);
    EXPECT_NEAR(variance_p(psi), 1.0 / (2.0 * 1.3 * 1.3), 1e-9);
    EXPECT_NEAR(mean_q(psi), 0.0, 1e-12);
}

TEST(oscillator, position_shift) {
    const PositionGrid g = PositionGrid::standard();
    const WaveFunction psi = momentum_displace(squeezed_vacuum(1.0, g), 0.8);
    for (double a : {0.3, -2.1, 1.7725}) {
        double lost = -1.0;
        const WaveFunction moved = position_shift(psi, a, &lost);
        EXPECT_NEAR(mean_q(moved), a, 1e-9);
        EXPECT_NEAR(mean_p(moved), 0.8, 1e-9);
        EXPECT_LT(lost, 1e-12);
        const WaveFunction back = position_shift(moved, -a);
        EXPECT_LT((back.samples() - psi.samples()).norm() * std::sqrt(g.dq()), 1e-9);
    }
    // An integer number of samples is an exact translation.
    const WaveFunction step = position_shift(psi, 10 * g.dq());
    for (int i = 0; i + 10 < g.n_points(); i += 37) {
        EXPECT_LT(std::abs(step.samples()[i + 10] - psi.samples()[i]), 1e-12);
    }
}

TEST(oscillator, edge_mass) {
    const PositionGrid g = PositionGrid::standard();
    EXPECT_LT(edge_mass(squeezed_vacuum(1.0, g).samples(), g), 1e-20);
    CVector wide(g.n_points());
    for (int i = 0; i < g.n_points(); ++i) {
        wide[i] = std::exp(-g.q(i) * g.q(i) / 32.0);
    }
    EXPECT_GT(edge_mass(WaveFunction::normalized(g, wide).samples(), g), 1e-6);
}

TEST(oscillator, hermite_functions_orthonormal) {
    const PositionGrid wide(-24, 24, 4096);
    const RMatrix hw = hermite_functions(80, wide);
    EXPECT_LT((hw.transpose() * hw * wide.dq() - RMatrix::Identity(81, 81)).cwiseAbs().maxCoeff(), 1e-12);
    // The standard grid ends near the classical turning point of n = 70.
    const PositionGrid g = PositionGrid::standard();
    const RMatrix h = hermite_functions(50, g);
    EXPECT_LT((h.transpose() * h * g.dq() - RMatrix::Identity(51, 51)).cwiseAbs().maxCoeff(), 1e-9);
    // psi_1(q) = sqrt(2) q pi^{-1/4} e^{-q^2/2}
    for (int i = 900; i < 1100; i += 13) {
        const double q = g.q(i);
        EXPECT_NEAR(h(i, 1), std::sqrt(2.0) * q * std::pow(kPi, -0.25) * std::exp(-q * q / 2), 1e-12);
    }
}

TEST(oscillator, squeezed_vacuum_fock_coefficients) {
    const PositionGrid g = PositionGrid::standard();
    const double w = 2.0;
    const double t = (w * w - 1.0) / (w * w + 1.0);
    const double c = (w + 1.0 / w) / 2.0;
    const FockVector f = to_fock(squeezed_vacuum(w, g), 120);
    for (int n = 0; n <= 30; ++n) {
        const double want = std::pow(t, n) * factorial_ratio(n) / std::sqrt(c);
        EXPECT_NEAR(f.coeffs[2 * n].real(), want, 1e-10) << n;
        EXPECT_NEAR(f.coeffs[2 * n + 1].real(), 0.0, 1e-10) << n;
        EXPECT_NEAR(f.coeffs[2 * n].imag(), 0.0, 1e-12);
    }
    EXPECT_THROW(to_fock(squeezed_vacuum(w, g), 10), InsufficientCutoff);
}

TEST(oscillator, fock_round_trip) {
    const PositionGrid g = PositionGrid::standard();
    const WaveFunction psi = momentum_displace(squeezed_vacuum(1.5, g), 0.9);
    const WaveFunction back = from_fock(to_fock(psi, 100), g);
    const double overlap = std::norm(psi.samples().dot(back.samples()) * g.dq());
    EXPECT_GT(overlap, 1.0 - 1e-10);
}

TEST(oscillator, ladder_operators) {
    const LadderOps ops = ladder_ops(20);
    const CMatrix comm = ops.a * ops.adag - ops.adag * ops.a;
    for (int n = 0; n < 20; ++n) {
        EXPECT_NEAR(comm(n, n).real(), 1.0, 1e-14);
    }
    const CMatrix qp = ops.q * ops.p - ops.p * ops.q;
    EXPECT_LT(std::abs(qp(3, 3) - kI), 1e-14);
    EXPECT_LT((ops.adag * ops.a).diagonal().real().cwiseAbs().maxCoeff() - 20.0, 1e-12);
    EXPECT_THROW(ladder_ops(0), ConfigError);
}

TEST(oscillator, fock_density_to_grid) {
    const PositionGrid g = PositionGrid::standard();
    CMatrix rho = CMatrix::Zero(4, 4);
    rho(0, 0) = 0.75;
    rho(1, 1) = 0.25;
    const LowRankDensity lr = fock_density_to_grid(rho, g);
    EXPECT_EQ(lr.factors.cols(), 2);
    EXPECT_NEAR(lr.trace(), 1.0, 1e-12);
    EXPECT_NEAR(lr.purity(), 0.625, 1e-12);
    EXPECT_NEAR(fidelity_pure(lr, hermite_state(0, g)), 0.75, 1e-12);
    EXPECT_NEAR(fidelity_pure(lr, hermite_state(1, g)), 0.25, 1e-12);
    const GridDensityMatrix dense = lr.to_dense();
    EXPECT_NEAR(dense.trace(), 1.0, 1e-12);
    EXPECT_NEAR(dense.purity(), 0.625, 1e-12);
    EXPECT_NEAR(fidelity_pure(dense, hermite_state(0, g)), 0.75, 1e-12);
}

TEST(oscillator, wigner_fock_states_at_origin) {
    const PositionGrid g = PositionGrid::standard();
    for (int n = 0; n <= 3; ++n) {
        const WignerGrid w = wigner(pure_low_rank(hermite_state(n, g)), {1.0, 1.0, 1});
        Eigen::Index iq = 0, ip = 0;
        w.q_axis.cwiseAbs().minCoeff(&iq);
        w.p_axis.cwiseAbs().minCoeff(&ip);
        ASSERT_EQ(w.q_axis[iq], 0.0);
        ASSERT_EQ(w.p_axis[ip], 0.0);
        EXPECT_NEAR(w.values(iq, ip), (n % 2 == 0 ? 1.0 : -1.0) / kPi, 1e-10) << n;
    }
}

TEST(oscillator, wigner_squeezed_closed_form) {
    const PositionGrid g = PositionGrid::standard();
    const double s = 1.6;
    const WignerGrid w = wigner(pure_low_rank(squeezed_vacuum(s, g)), {4.0, 3.0, 8});
    double worst = 0.0;
    for (int i = 0; i < w.q_axis.size(); ++i) {
        for (int j = 0; j < w.p_axis.size(); ++j) {
            const double q = w.q_axis[i];
            const double p = w.p_axis[j];
            const double want = std::exp(-q * q / (s * s) - p * p * s * s) / kPi;
            worst = std::max(worst, std::abs(w.values(i, j) - want));
        }
    }
    EXPECT_LT(worst, 1e-10);
    EXPECT_LE(w.q_axis.cwiseAbs().maxCoeff(), 4.0);
    EXPECT_LE(w.p_axis.cwiseAbs().maxCoeff(), 3.0);
}

TEST(oscillator, wigner_marginals_and_normalization) {
    const PositionGrid g(-8, 8, 512);
    const WaveFunction psi = momentum_displace(squeezed_vacuum(1.2, g), 0.6);
    const WaveFunction cat = WaveFunction::normalized(
        g, position_shift(psi, 2.0).samples() + position_shift(psi, -2.0).samples());
    const GridDensityMatrix rho = pure_density(cat);
    const WignerGrid w = wigner_full(rho);
    const double dp = w.p_axis[1] - w.p_axis[0];
    EXPECT_NEAR(w.integral(), 1.0, 1e-9);
    for (int i = 100; i < 412; i += 17) {
        const double marginal = w.values.row(i).sum() * dp;
        EXPECT_NEAR(marginal, std::norm(cat.samples()[i]), 1e-9) << i;
    }
    // Interference fringes between the two components reach negative values.
    EXPECT_LT(w.values.minCoeff(), -0.05);
    const WignerGrid lr = wigner(pure_low_rank(cat), {8.0, 1e9, 1});
    EXPECT_LT((lr.values - w.values).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(oscillator, fidelities) {
    const PositionGrid g = PositionGrid::standard();
    const WaveFunction a = squeezed_vacuum(1.0, g);
    const WaveFunction b = squeezed_vacuum(2.0, g);
    // <a|b> for Gaussians of widths 1 and 2 is sqrt(2 * 1 * 2 / (1 + 4)).
    EXPECT_NEAR(fidelity_pure(pure_low_rank(a), b), 0.8, 1e-12);
    EXPECT_NEAR(fidelity_pure(pure_density(a), b), 0.8, 1e-12);
    EXPECT_NEAR(uhlmann_fidelity(pure_low_rank(a), pure_low_rank(b)), 0.8, 1e-12);
    EXPECT_NEAR(uhlmann_fidelity(pure_low_rank(a), pure_low_rank(a)), 1.0, 1e-12);

    CMatrix mixed = CMatrix::Zero(3, 3);
    mixed(0, 0) = 0.5;
    mixed(2, 2) = 0.5;
    const LowRankDensity rho = fock_density_to_grid(mixed, g);
    // F(rho, |0><0|) = <0|rho|0>.
    EXPECT_NEAR(uhlmann_fidelity(rho, pure_low_rank(a)), 0.5, 1e-12);
    EXPECT_NEAR(uhlmann_fidelity(rho, rho), 1.0, 1e-12);
    EXPECT_THROW(fidelity_pure(pure_low_rank(a), squeezed_vacuum(1.0, PositionGrid(-8, 8, 512))), GridMismatch);
}
