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

#ifndef QI_QUADRATIC_OPERATOR_H
#define QI_QUADRATIC_OPERATOR_H

#include <Eigen/Dense>
#include <complex>
#include <cstddef>

#include "qi/gaussian_state.h"

namespace qi {

using Complex = std::complex<double>;

/// A ladder operator a_mode or a_mode^dagger.
struct Ladder {
    std::size_t mode;
    bool dagger;
};
inline Ladder annihilate(std::size_t mode) { return {mode, false}; }
inline Ladder create(std::size_t mode) { return {mode, true}; }

/// Hermitian operator of the form c + sum_uv F_uv xi_u xi_v over the ordered
/// basis xi = (a_1..a_M, a_1^dagger..a_M^dagger).
///
/// Products are kept in the order written. The representation is therefore not
/// unique (xi_u xi_v and xi_v xi_u differ by a c-number); compare operators via
/// `canonical()`, which symmetrizes F and moves the commutators into c.
class QuadraticOperator {
   public:
    explicit QuadraticOperator(std::size_t num_modes, double constant = 0.0);

    std::size_t num_modes() const { return num_modes_; }
    double constant() const { return constant_; }
    const Eigen::MatrixXcd &coeff() const { return coeff_; }

    /// Basis index of a ladder operator.
    std::size_t index(Ladder op) const;

    /// Adds `value * first * second`.
    QuadraticOperator &add(Ladder first, Ladder second, Complex value);
    QuadraticOperator &add_constant(double value);

    QuadraticOperator &operator+=(const QuadraticOperator &other);
    QuadraticOperator operator*(double scale) const;

    /// Symmetric-coefficient form. The returned constant may carry a small
    /// imaginary part only if the operator is not Hermitian.
    std::pair<Complex, Eigen::MatrixXcd> canonical() const;
    bool is_hermitian(double tol = 1e-12) const;

    /// Same operator on a larger mode count; new modes carry no terms.
    QuadraticOperator with_modes(std::size_t num_modes) const;

    /// Rewrites the operator under the linear substitution
    /// a_k -> sum_l w_kl a_l (and the conjugate rule for a_k^dagger).
    QuadraticOperator substitute(const Eigen::MatrixXd &mode_map) const;

   private:
    std::size_t num_modes_;
    double constant_;
    Eigen::MatrixXcd coeff_;
};

/// Mean and variance of an operator in a state.
struct MomentPair {
    double mean = 0;
    double variance = 0;
};

/// Squared quadrature [(a^dagger e^{i theta} + a e^{-i theta})/sqrt(2)]^2.
QuadraticOperator quadrature_squared(std::size_t mode, double theta, std::size_t num_modes);

/// [X_1(0)]^2 + [X_2(pi/2)]^2 on the two output ports of the splitter.
QuadraticOperator build_dhd_prime();

/// Operator whose moments in `state` equal the moments of `op` in
/// apply_beam_splitter(state, mode_i, mode_j, t).
QuadraticOperator conjugate_by_bs(const QuadraticOperator &op, std::size_t mode_i, std::size_t mode_j, double t);

/// Maps a two-port operator measured after the receiver's splitter back onto
/// (return, idler): the reverse splitter on modes (1, 0).
QuadraticOperator conjugate_by_bs(const QuadraticOperator &op, double t = 0.5);

/// a_R a_R^dagger - a_R^dagger a_I^dagger - a_R a_I + a_I^dagger a_I.
QuadraticOperator build_dhd_operator();

/// (G-1) a_R a_R^dagger + sqrt(G(G-1)) (a_R^dagger a_I^dagger + a_R a_I) + G a_I^dagger a_I.
QuadraticOperator build_opa_operator(double gain);

/// nu (a_R a_I + a_R^dagger a_I^dagger) + mu (a_I a_V^dagger + a_I^dagger a_V), modes (R, I, V).
QuadraticOperator build_pc_operator(double mu, double nu);

QuadraticOperator number_operator(std::size_t mode, std::size_t num_modes);

/// Ordered two-point functions <xi_u xi_v> of a zero-mean state.
Eigen::MatrixXcd two_point_matrix(const GaussianState &state);

/// Mean and variance by Gaussian moment factoring. Requires a zero-mean state
/// (throws std::invalid_argument otherwise) with the operator's mode count.
MomentPair moments(const QuadraticOperator &op, const GaussianState &state);

}  // namespace qi

#endif
