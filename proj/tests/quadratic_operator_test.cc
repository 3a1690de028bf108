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

#include "qi/quadratic_operator.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qi/gaussian_state.h"

namespace qi {
namespace {

bool same_operator(const QuadraticOperator &a, const QuadraticOperator &b, double tol = 1e-12) {
    const auto [ca, fa] = a.canonical();
    const auto [cb, fb] = b.canonical();
    return std::abs(ca - cb) <= tol && (fa - fb).cwiseAbs().maxCoeff() <= tol;
}

TEST(QuadraticOperator, OrderingIsAbsorbedByCanonicalForm) {
    QuadraticOperator a_adag(1);
    a_adag.add(annihilate(0), create(0), 1.0);
    QuadraticOperator n_plus_one(1, 1.0);
    n_plus_one.add(create(0), annihilate(0), 1.0);
    EXPECT_TRUE(same_operator(a_adag, n_plus_one));
    EXPECT_FALSE(same_operator(a_adag, number_operator(0, 1)));
}

TEST(QuadraticOperator, HermiticityCheck) {
    QuadraticOperator squeeze(2);
    squeeze.add(annihilate(0), annihilate(1), 1.0);
    EXPECT_FALSE(squeeze.is_hermitian());
    squeeze.add(create(0), create(1), 1.0);
    EXPECT_TRUE(squeeze.is_hermitian());
    QuadraticOperator phase(1);
    phase.add(create(0), annihilate(0), Complex(0, 1));
    EXPECT_FALSE(phase.is_hermitian());
}

TEST(QuadraticOperator, ReceiverOperatorsAreHermitian) {
    EXPECT_TRUE(build_dhd_operator().is_hermitian());
    EXPECT_TRUE(build_opa_operator(1.5).is_hermitian());
    EXPECT_TRUE(build_pc_operator(std::sqrt(2.0), 1.0).is_hermitian());
    EXPECT_TRUE(build_dhd_prime().is_hermitian());
}

TEST(QuadraticOperator, DhdMatchesExplicitForm) {
    QuadraticOperator expected(2);
    expected.add(annihilate(0), create(0), 1.0);
    expected.add(create(0), create(1), -1.0);
    expected.add(annihilate(0), annihilate(1), -1.0);
    expected.add(create(1), annihilate(1), 1.0);
    EXPECT_TRUE(same_operator(build_dhd_operator(), expected));
}

TEST(QuadraticOperator, ParameterChecks) {
    EXPECT_THROW(build_opa_operator(1.0), std::domain_error);
    EXPECT_THROW(build_opa_operator(0.5), std::domain_error);
    EXPECT_THROW(build_pc_operator(1.0, 1.0), std::domain_error);
    EXPECT_THROW(QuadraticOperator(0), std::invalid_argument);
    QuadraticOperator op(2);
    EXPECT_THROW(op.add(annihilate(2), create(0), 1.0), std::out_of_range);
    EXPECT_THROW(op += QuadraticOperator(3), std::invalid_argument);
    EXPECT_THROW(op.with_modes(1), std::invalid_argument);
    EXPECT_THROW(conjugate_by_bs(op, 0, 0, 0.5), std::invalid_argument);
    EXPECT_THROW(conjugate_by_bs(op, 0, 1, 2.0), std::domain_error);
}

TEST(Moments, NumberOperatorInThermalState) {
    for (double n : {0.0, 0.3, 30.0}) {
        const auto m = moments(number_operator(0, 1), make_thermal(n));
        EXPECT_NEAR(m.mean, n, 1e-12 * (1 + n));
        // Bose-Einstein: Var(n) = N (N + 1).
        EXPECT_NEAR(m.variance, n * (n + 1), 1e-10 * (1 + n * n));
    }
}

TEST(Moments, IdlerNumberInTmsv) {
    const auto m = moments(number_operator(1, 2), make_tmsv(0.01));
    EXPECT_NEAR(m.mean, 0.01, 1e-15);
}

TEST(Moments, QuadratureSquaredInVacuum) {
    for (double theta : {0.0, 0.7, M_PI / 2}) {
        const auto m = moments(quadrature_squared(0, theta, 1), make_vacuum(1));
        EXPECT_NEAR(m.mean, 0.5, 1e-15);
        // Gaussian with sigma^2 = 1/2: Var(X^2) = 2 sigma^4.
        EXPECT_NEAR(m.variance, 0.5, 1e-15);
    }
}

TEST(Moments, TwoModeSqueezingCorrelator) {
    // <a_R a_I + a_R^dagger a_I^dagger> = 2 sqrt(N (N + 1)) in a TMSV.
    QuadraticOperator op(2);
    op.add(annihilate(0), annihilate(1), 1.0);
    op.add(create(0), create(1), 1.0);
    const double n = 0.4;
    EXPECT_NEAR(moments(op, make_tmsv(n)).mean, 2 * std::sqrt(n * (n + 1)), 1e-14);
}

TEST(Moments, ConstantHasNoVariance) {
    const auto m = moments(QuadraticOperator(2, 3.5), make_tmsv(1));
    EXPECT_DOUBLE_EQ(m.mean, 3.5);
    EXPECT_DOUBLE_EQ(m.variance, 0.0);
}

TEST(Moments, RejectsMismatchedOrDisplacedStates) {
    EXPECT_THROW(moments(number_operator(0, 2), make_vacuum(1)), std::invalid_argument);
    EXPECT_THROW(moments(number_operator(0, 1), make_coherent(1, 0)), std::invalid_argument);
}

TEST(Moments, NonHermitianNegativeVarianceIsReported) {
    QuadraticOperator op(1);
    op.add(create(0), annihilate(0), Complex(0, 1));
    EXPECT_THROW(moments(op, make_thermal(1)), std::logic_error);
}

TEST(Moments, WithModesLeavesMomentsUnchanged) {
    const auto op = build_dhd_operator();
    const auto state = qi_channel(0.1, 2, 0.3, Hypothesis::kPresent);
    const auto a = moments(op, state);
    const auto b = moments(op.with_modes(3), tensor_product(state, make_thermal(5)));
    EXPECT_NEAR(a.mean, b.mean, 1e-12);
    EXPECT_NEAR(a.variance, b.variance, 1e-12);
}

TEST(Moments, ConjugationMatchesStateSideSplitter) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0, 1);
    for (int trial = 0; trial < 40; trial++) {
        const double t = u(rng);
        const auto state = tensor_product(make_tmsv(2 * u(rng)), make_thermal(3 * u(rng)));
        QuadraticOperator op(3, u(rng));
        // Random Hermitian: sum of h.c. pairs.
        for (int term = 0; term < 4; term++) {
            const Ladder x{static_cast<std::size_t>(rng() % 3), rng() % 2 == 1};
            const Ladder y{static_cast<std::size_t>(rng() % 3), rng() % 2 == 1};
            const Complex c(u(rng) - 0.5, u(rng) - 0.5);
            op.add(x, y, c);
            op.add(Ladder{y.mode, !y.dagger}, Ladder{x.mode, !x.dagger}, std::conj(c));
        }
        ASSERT_TRUE(op.is_hermitian());
        const auto lhs = moments(conjugate_by_bs(op, 0, 2, t), state);
        const auto rhs = moments(op, apply_beam_splitter(state, 0, 2, t));
        EXPECT_NEAR(lhs.mean, rhs.mean, 1e-10 * (1 + std::abs(rhs.mean)));
        EXPECT_NEAR(lhs.variance, rhs.variance, 1e-10 * (1 + rhs.variance));
    }
}

TEST(Moments, TotalPhotonNumberInvariantUnderSplitter) {
    auto total = number_operator(0, 2);
    total += number_operator(1, 2);
    EXPECT_TRUE(same_operator(conjugate_by_bs(total, 0, 1, 0.37), total));
}

TEST(Moments, VarianceIsNonNegativeOnRandomScenarios) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0, 1);
    const QuadraticOperator ops[] = {build_dhd_operator(), build_opa_operator(1 + 10 * u(rng))};
    for (int trial = 0; trial < 100; trial++) {
        const auto state = qi_channel(5 * u(rng), 50 * u(rng), u(rng), Hypothesis::kPresent);
        for (const auto &op : ops) {
            EXPECT_GE(moments(op, state).variance, 0.0);
        }
    }
}

}  // namespace
}  // namespace qi
