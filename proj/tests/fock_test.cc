// Copyright 2026 The qi-lab Authors
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

#include "qi/fock.h"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "qi/receivers.h"

namespace qi {
namespace {

// D(beta) = exp(beta a^dagger - beta* a) in a generous truncation, cropped.
Eigen::MatrixXcd displacement_by_expm(Complex beta, int dim, int work_dim) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(work_dim, work_dim);
    for (int n = 1; n < work_dim; n++) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    const Eigen::MatrixXcd gen = beta * a.adjoint() - std::conj(beta) * a;
    const Eigen::MatrixXcd d = gen.exp();
    return d.topLeftCorner(dim, dim);
}

TEST(Thermal, RequiredDimension) {
    EXPECT_EQ(required_thermal_dim(0), 1u);
    const auto d = required_thermal_dim(30);
    EXPECT_GE(d, 700u);
    EXPECT_LT(std::pow(30.0 / 31.0, static_cast<double>(d)), kThermalTail);
    EXPECT_GE(std::pow(30.0 / 31.0, static_cast<double>(d - 1)), kThermalTail);
}

TEST(Thermal, WeightsAndTruncationError) {
    const auto w = thermal_weights(2.0, 3);
    EXPECT_NEAR(w[0], 1.0 / 3, 1e-15);
    EXPECT_NEAR(w[1], 2.0 / 9, 1e-15);
    EXPECT_NEAR(w[2], 4.0 / 27, 1e-15);
    try {
        thermal_fock(30, 100);
        FAIL() << "expected TruncationError";
    } catch (const TruncationError &e) {
        EXPECT_EQ(e.required_dim(), required_thermal_dim(30));
    }
    const auto rho = thermal_fock(1.0, 40);
    EXPECT_NEAR(rho.entries.trace().real(), 1.0, 1e-10);
}

TEST(Displacement, MatchesMatrixExponential) {
    for (const Complex beta : {Complex(0.3, 0), Complex(0.8, -0.6), Complex(-1.5, 1.1)}) {
        const auto ours = displacement_matrix(beta, 25).entries;
        const auto oracle = displacement_by_expm(beta, 25, 90);
        EXPECT_LE((ours - oracle).cwiseAbs().maxCoeff(), 1e-12) << beta;
    }
}

TEST(Displacement, VacuumColumnIsCoherentState) {
    const Complex beta(0.7, 0.4);
    const auto d = displacement_matrix(beta, 20).entries;
    for (int n = 0; n < 20; n++) {
        const Complex expected = std::exp(-0.5 * std::norm(beta)) * std::pow(beta, n) / std::sqrt(std::tgamma(n + 1.0));
        EXPECT_NEAR(std::abs(d(n, 0) - expected), 0.0, 1e-14);
    }
}

TEST(Displacement, ColumnsInSafeRegionAreNormalized) {
    for (double x : {0.01, 1.0, 25.0}) {
        const std::size_t dim = 400;
        const auto d = displacement_matrix(Complex(std::sqrt(x), 0), dim).entries;
        for (Eigen::Index n = 0; n < static_cast<Eigen::Index>(dim - 4 * std::sqrt(static_cast<double>(dim))); n += 7) {
            // Column n spreads over m ~ n + x +- sqrt(x (2n + 1)).
            if (n + x + 8 * std::sqrt(x * (2 * n + 1)) > static_cast<double>(dim)) {
                break;
            }
            EXPECT_NEAR(d.col(n).squaredNorm(), 1.0, 1e-8) << "x=" << x << " n=" << n;
        }
    }
}

TEST(Displacement, LargeArgumentStaysFinite) {
    const auto p = displacement_probabilities(800.0, 1200);
    EXPECT_TRUE(p.allFinite());
    EXPECT_NEAR(p.col(0).sum(), 1.0, 1e-9);
    EXPECT_TRUE(p.isApprox(p.transpose()));
}

TEST(GoldenSection, FindsParabolaMinimum) {
    const auto [x, f] = golden_section_minimize([](double s) { return (s - 0.3) * (s - 0.3) + 2; }, 0, 1, 1e-8);
    EXPECT_NEAR(x, 0.3, 1e-7);
    EXPECT_NEAR(f, 2.0, 1e-14);
}

TEST(Chernoff, PureStateLimit) {
    for (double kappa : {0.5, 0.2}) {
        for (double n_s : {0.1, 1.0}) {
            const auto r = ci_chernoff(n_s, 0, kappa, 1, CiConvention::kExponent);
            // Two pure states: Q = |<0|beta>|^2 = exp(-kappa N_S).
            EXPECT_NEAR(-std::log(r.q_value), kappa * n_s, 1e-6 * kappa * n_s);
        }
    }
}

TEST(Chernoff, MatchesDenseMatrixPowers) {
    const double n_s = 0.8, n_b = 0.5, kappa = 0.4;
    const int dim = 60;
    const Complex beta(std::sqrt(kappa * n_s), 0);
    const auto d = displacement_by_expm(beta, dim, 160);
    const auto p0 = thermal_weights(n_b, dim);
    const auto p1 = thermal_weights((1 - kappa) * n_b, dim);
    Eigen::MatrixXcd rho1 = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = 0; n < dim; n++) {
        rho1 += p1[n] * d.col(n) * d.col(n).adjoint();
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho1);
    const ChernoffProblem problem(n_s, n_b, kappa, dim);
    for (double s : {0.2, 0.5, 0.9}) {
        const Eigen::VectorXd lam = eig.eigenvalues().cwiseMax(0).array().pow(1 - s);
        const Eigen::MatrixXcd rho1_pow = eig.eigenvectors() * lam.asDiagonal() * eig.eigenvectors().adjoint();
        double q = 0;
        for (int m = 0; m < dim; m++) {
            q += std::pow(p0[m], s) * rho1_pow(m, m).real();
        }
        EXPECT_NEAR(problem.q(s), q, 1e-9) << s;
    }
}

TEST(Chernoff, QIsBoundedAndUnimodal) {
    for (double n_b : {0.5, 5.0, 30.0}) {
        const ChernoffProblem problem(0.01, n_b, 0.1);
        std::vector<double> q;
        for (int i = 0; i <= 20; i++) {
            q.push_back(problem.q(0.025 + 0.95 * i / 20.0));
            EXPECT_LE(q.back(), 1 + 1e-12);
        }
        // Convex Q on a grid: strictly one descent followed by one ascent.
        int changes = 0;
        for (std::size_t i = 2; i < q.size(); i++) {
            if ((q[i] - q[i - 1] > 0) != (q[i - 1] - q[i - 2] > 0)) {
                changes++;
            }
        }
        EXPECT_LE(changes, 1) << n_b;
    }
}

TEST(Chernoff, ConventionsAndScaling) {
    const auto one = ci_chernoff(0.01, 30, 0.05, 1, CiConvention::kExponent);
    const auto many = ci_chernoff(0.01, 30, 0.05, 1e7, CiConvention::kExponent);
    EXPECT_NEAR(many.exponent, 1e7 * one.exponent, 1e-9 * many.exponent);
    EXPECT_NEAR(many.snr, many.exponent, 0);
    const auto erfc_like = ci_chernoff(0.01, 30, 0.05, 1e7);
    EXPECT_NEAR(log_error_from_snr(erfc_like.snr), std::log(0.5) - erfc_like.exponent, 1e-9 * erfc_like.exponent);
    EXPECT_GT(many.dim, 700u);
    EXPECT_LE(many.trace_deficit, kMaxTraceDeficit);
}

TEST(Chernoff, NoTargetMeansNoInformation) {
    const auto r = ci_chernoff(0.01, 30, 0.0, 1e7);
    EXPECT_NEAR(r.q_value, 1.0, 1e-12);
    EXPECT_EQ(r.snr, 0.0);
}

TEST(Chernoff, TooSmallDimensionThrows) {
    EXPECT_THROW(ChernoffProblem(0.01, 30, 0.1, 100), TruncationError);
    EXPECT_THROW(ci_chernoff(0.01, 30, 0.1, 0.5), std::domain_error);
}

TEST(FockOracle, MatchesEngineOnSmallTruncation) {
    QiScenario s;
    s.kappa = 0.3;
    s.n_s = 0.1;
    s.n_b = 0.5;
    for (auto r : kQuantumReceivers) {
        for (auto h : {Hypothesis::kAbsent, Hypothesis::kPresent}) {
            const auto op = receiver_operator(r, s);
            const auto engine = moments(op, receiver_state(r, s, h));
            const auto fock = fock_oracle_moments(op, s, h, 20);
            EXPECT_NEAR(fock.mean, engine.mean, 1e-6 * std::max(1.0, std::abs(engine.mean))) << receiver_name(r);
            EXPECT_NEAR(fock.variance, engine.variance, 1e-6 * std::max(1.0, engine.variance)) << receiver_name(r);
        }
    }
}

TEST(FockOracle, NumberOperatorOnIdler) {
    QiScenario s;
    s.kappa = 0.3;
    s.n_s = 0.2;
    s.n_b = 0.5;
    const auto m = fock_oracle_moments(number_operator(1, 2), s, Hypothesis::kPresent, 24);
    EXPECT_NEAR(m.mean, 0.2, 1e-7);
    EXPECT_NEAR(m.variance, 0.2 * 1.2, 1e-7);
}

TEST(FockOracle, Preconditions) {
    QiScenario s;
    s.n_s = 0.1;
    s.n_b = 0.5;
    EXPECT_THROW(fock_oracle_moments(build_dhd_operator(), s, Hypothesis::kAbsent, 40), std::invalid_argument);
    s.n_b = 2;
    EXPECT_THROW(fock_oracle_moments(build_dhd_operator(), s, Hypothesis::kAbsent, 20), std::invalid_argument);
    s.n_b = 0.5;
    EXPECT_THROW(fock_oracle_moments(build_dhd_operator(), s, Hypothesis::kAbsent, 8), TruncationError);
}

}  // namespace
}  // namespace qi
