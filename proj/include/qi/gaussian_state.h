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

#ifndef QI_GAUSSIAN_STATE_H
#define QI_GAUSSIAN_STATE_H

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <vector>

namespace qi {

/// Symmetry tolerance (absolute, entrywise) for covariance matrices.
inline constexpr double kCovSymmetryTol = 1e-12;
/// Symplectic eigenvalues must be at least 1 - kPhysicalityTol.
inline constexpr double kPhysicalityTol = 1e-9;

/// A Gaussian state of M bosonic modes, stored as first and second moments.
///
/// Quadratures are ordered (x_1, p_1, ..., x_M, p_M) with x = a + a^dagger and
/// p = -i(a - a^dagger), so the vacuum covariance is the identity and
/// cov_ij = <{dr_i, dr_j}>/2. Construction checks symmetry and physicality
/// (all symplectic eigenvalues >= 1) and throws std::domain_error otherwise.
class GaussianState {
   public:
    GaussianState(Eigen::VectorXd mean, Eigen::MatrixXd cov);

    std::size_t num_modes() const { return num_modes_; }
    const Eigen::VectorXd &mean() const { return mean_; }
    const Eigen::MatrixXd &cov() const { return cov_; }
    bool is_zero_mean() const { return mean_.isZero(0.0); }

   private:
    std::size_t num_modes_;
    Eigen::VectorXd mean_;
    Eigen::MatrixXd cov_;
};

enum class Hypothesis { kAbsent, kPresent };

/// One point of the illumination parameter space.
struct QiScenario {
    double kappa = 0.01;
    double n_s = 0.01;
    double n_b = 30.0;
    double k_modes = 1e7;
    double opa_gain = 1.0 + 7.4e-5;
    double pc_mu = 1.4142135623730951;
    double pc_nu = 1.0;

    /// Throws std::domain_error naming the first violated field.
    void validate() const;
};

/// Symplectic form for `num_modes` modes in (x, p) interleaved order.
Eigen::MatrixXd symplectic_form(std::size_t num_modes);

/// Symplectic eigenvalues in ascending order (one per mode).
Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd &cov);

GaussianState make_vacuum(std::size_t num_modes);
/// Two-mode squeezed vacuum, modes (signal, idler).
GaussianState make_tmsv(double n_s);
GaussianState make_thermal(double n_b);
GaussianState make_coherent(double alpha_re, double alpha_im);

GaussianState tensor_product(const GaussianState &a, const GaussianState &b);

/// Keeps the listed modes, in the listed order (partial trace over the rest).
GaussianState reduce_to_modes(const GaussianState &state, const std::vector<std::size_t> &modes);

/// Beam splitter with transmissivity t:
///   a_i -> sqrt(t) a_i + sqrt(1-t) a_j,   a_j -> -sqrt(1-t) a_i + sqrt(t) a_j.
/// Swapping i and j gives the inverse transformation.
GaussianState apply_beam_splitter(const GaussianState &state, std::size_t mode_i, std::size_t mode_j, double t);

/// Return/idler state under the given hypothesis, evaluated from the closed
/// block form. Mode order is (return, idler).
GaussianState qi_channel(double n_s, double n_b, double kappa, Hypothesis hypothesis);

/// Same state assembled from the source, a thermal bath and a beam splitter of
/// transmissivity kappa on (signal, bath), discarding the loss port.
GaussianState qi_channel_composed(double n_s, double n_b, double kappa, Hypothesis hypothesis);

}  // namespace qi

#endif
