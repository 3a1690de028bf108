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

#include "qi/gaussian_state.h"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qi {

namespace {

void require(bool ok, const std::string &message) {
    if (!ok) {
        throw std::domain_error(message);
    }
}

double finite_nonnegative(double value, const char *name) {
    require(std::isfinite(value) && value >= 0, std::string(name) + " must be finite and >= 0");
    return value;
}

}  // namespace

GaussianState::GaussianState(Eigen::VectorXd mean, Eigen::MatrixXd cov)
    : num_modes_(static_cast<std::size_t>(cov.rows() / 2)), mean_(std::move(mean)), cov_(std::move(cov)) {
    require(cov_.rows() > 0 && cov_.rows() % 2 == 0 && cov_.rows() == cov_.cols(), "covariance must be 2M x 2M");
    require(mean_.size() == cov_.rows(), "mean length must match covariance");
    require(cov_.allFinite() && mean_.allFinite(), "state moments must be finite");
    require(((cov_ - cov_.transpose()).cwiseAbs().maxCoeff() <= kCovSymmetryTol), "covariance is not symmetric");
    require(symplectic_eigenvalues(cov_).minCoeff() >= 1.0 - kPhysicalityTol,
            "covariance violates the uncertainty principle");
}

void QiScenario::validate() const {
    require(std::isfinite(kappa) && kappa >= 0 && kappa <= 1, "kappa must lie in [0, 1]");
    finite_nonnegative(n_s, "n_s");
    finite_nonnegative(n_b, "n_b");
    require(std::isfinite(k_modes) && k_modes >= 1, "k_modes must be >= 1");
    require(std::isfinite(opa_gain) && opa_gain > 1, "opa_gain must be > 1");
    require(std::isfinite(pc_mu) && std::isfinite(pc_nu) && std::abs(pc_mu * pc_mu - pc_nu * pc_nu - 1) <= 1e-12,
            "pc_mu^2 - pc_nu^2 must equal 1");
}

Eigen::MatrixXd symplectic_form(std::size_t num_modes) {
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * num_modes, 2 * num_modes);
    for (std::size_t k = 0; k < num_modes; k++) {
        omega(2 * k, 2 * k + 1) = 1;
        omega(2 * k + 1, 2 * k) = -1;
    }
    return omega;
}

Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd &cov) {
    // Omega * cov is similar to i * (i Omega cov); its spectrum is {+-i nu_k}.
    const auto num_modes = static_cast<std::size_t>(cov.rows() / 2);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(symplectic_form(num_modes) * cov, false);
    std::vector<double> magnitudes;
    magnitudes.reserve(cov.rows());
    for (const auto &lambda : solver.eigenvalues()) {
        magnitudes.push_back(std::abs(lambda));
    }
    std::sort(magnitudes.begin(), magnitudes.end());
    Eigen::VectorXd nu(num_modes);
    for (std::size_t k = 0; k < num_modes; k++) {
        nu[k] = 0.5 * (magnitudes[2 * k] + magnitudes[2 * k + 1]);
    }
    return nu;
}

GaussianState make_vacuum(std::size_t num_modes) {
    require(num_modes > 0, "a state needs at least one mode");
    return GaussianState(Eigen::VectorXd::Zero(2 * num_modes), Eigen::MatrixXd::Identity(2 * num_modes, 2 * num_modes));
}

GaussianState make_tmsv(double n_s) {
    finite_nonnegative(n_s, "n_s");
    const double a = 2 * n_s + 1;
    const double c = 2 * std::sqrt(n_s * (n_s + 1));
    Eigen::MatrixXd cov(4, 4);
    cov << a, 0, c, 0,
           0, a, 0, -c,
           c, 0, a, 0,
           0, -c, 0, a;
    return GaussianState(Eigen::VectorXd::Zero(4), cov);
}

GaussianState make_thermal(double n_b) {
    finite_nonnegative(n_b, "n_b");
    return GaussianState(Eigen::VectorXd::Zero(2), (2 * n_b + 1) * Eigen::MatrixXd::Identity(2, 2));
}

GaussianState make_coherent(double alpha_re, double alpha_im) {
    Eigen::VectorXd mean(2);
    mean << 2 * alpha_re, 2 * alpha_im;
    return GaussianState(mean, Eigen::MatrixXd::Identity(2, 2));
}

GaussianState tensor_product(const GaussianState &a, const GaussianState &b) {
    const auto na = a.cov().rows();
    const auto nb = b.cov().rows();
    Eigen::VectorXd mean(na + nb);
    mean << a.mean(), b.mean();
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(na + nb, na + nb);
    cov.topLeftCorner(na, na) = a.cov();
    cov.bottomRightCorner(nb, nb) = b.cov();
    return GaussianState(mean, cov);
}

GaussianState reduce_to_modes(const GaussianState &state, const std::vector<std::size_t> &modes) {
    require(!modes.empty(), "at least one mode must be kept");
    const auto n = static_cast<Eigen::Index>(2 * modes.size());
    Eigen::VectorXd mean(n);
    Eigen::MatrixXd cov(n, n);
    for (std::size_t r = 0; r < modes.size(); r++) {
        require(modes[r] < state.num_modes(), "mode index out of range");
        for (int qr = 0; qr < 2; qr++) {
            const auto row = static_cast<Eigen::Index>(2 * r + qr);
            mean[row] = state.mean()[2 * modes[r] + qr];
            for (std::size_t c = 0; c < modes.size(); c++) {
                for (int qc = 0; qc < 2; qc++) {
                    cov(row, static_cast<Eigen::Index>(2 * c + qc)) = state.cov()(2 * modes[r] + qr, 2 * modes[c] + qc);
                }
            }
        }
    }
    return GaussianState(mean, cov);
}

GaussianState apply_beam_splitter(const GaussianState &state, std::size_t mode_i, std::size_t mode_j, double t) {
    require(std::isfinite(t) && t >= 0 && t <= 1, "transmissivity must lie in [0, 1]");
    require(mode_i != mode_j && mode_i < state.num_modes() && mode_j < state.num_modes(), "invalid beam splitter modes");
    const double ct = std::sqrt(t);
    const double st = std::sqrt(1 - t);
    Eigen::MatrixXd s = Eigen::MatrixXd::Identity(state.cov().rows(), state.cov().cols());
    for (std::size_t q = 0; q < 2; q++) {
        const auto i = 2 * mode_i + q;
        const auto j = 2 * mode_j + q;
        s(i, i) = ct;
        s(i, j) = st;
        s(j, i) = -st;
        s(j, j) = ct;
    }
    Eigen::MatrixXd cov = s * state.cov() * s.transpose();
    cov = 0.5 * (cov + cov.transpose()).eval();
    return GaussianState(s * state.mean(), cov);
}

GaussianState qi_channel(double n_s, double n_b, double kappa, Hypothesis hypothesis) {
    QiScenario{.kappa = kappa, .n_s = n_s, .n_b = n_b}.validate();
    const double a = 2 * n_s + 1;
    const double b = 2 * n_b + 1;
    const double c = 2 * std::sqrt(n_s * (n_s + 1));
    const double k = hypothesis == Hypothesis::kPresent ? kappa : 0.0;
    const double ret = k * a + (1 - k) * b;
    const double corr = c * std::sqrt(k);
    Eigen::MatrixXd cov(4, 4);
    cov << ret, 0, corr, 0,
           0, ret, 0, -corr,
           corr, 0, a, 0,
           0, -corr, 0, a;
    return GaussianState(Eigen::VectorXd::Zero(4), cov);
}

GaussianState qi_channel_composed(double n_s, double n_b, double kappa, Hypothesis hypothesis) {
    QiScenario{.kappa = kappa, .n_s = n_s, .n_b = n_b}.validate();
    // Modes: 0 signal, 1 idler, 2 bath. The splitter sends sqrt(kappa) of the
    // signal into mode 0, which becomes the return mode.
    const double t = hypothesis == Hypothesis::kPresent ? kappa : 0.0;
    auto three = apply_beam_splitter(tensor_product(make_tmsv(n_s), make_thermal(n_b)), 0, 2, t);
    return reduce_to_modes(three, {0, 1});
}

}  // namespace qi
