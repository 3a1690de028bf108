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

#include <cmath>
#include <stdexcept>

namespace qi {

namespace {

constexpr Complex kI{0.0, 1.0};

// Commutator [xi_u, xi_v] for the ladder basis.
Eigen::MatrixXcd commutator_matrix(std::size_t num_modes) {
    const auto m = static_cast<Eigen::Index>(num_modes);
    Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(2 * m, 2 * m);
    for (Eigen::Index j = 0; j < m; j++) {
        k(j, m + j) = 1.0;
        k(m + j, j) = -1.0;
    }
    return k;
}

// Swaps the a and a^dagger halves of the basis.
Eigen::MatrixXcd dagger_swap(const Eigen::MatrixXcd &f, std::size_t num_modes) {
    const auto m = static_cast<Eigen::Index>(num_modes);
    Eigen::MatrixXcd out(2 * m, 2 * m);
    out.topLeftCorner(m, m) = f.bottomRightCorner(m, m);
    out.topRightCorner(m, m) = f.bottomLeftCorner(m, m);
    out.bottomLeftCorner(m, m) = f.topRightCorner(m, m);
    out.bottomRightCorner(m, m) = f.topLeftCorner(m, m);
    return out;
}

}  // namespace

QuadraticOperator::QuadraticOperator(std::size_t num_modes, double constant)
    : num_modes_(num_modes),
      constant_(constant),
      coeff_(Eigen::MatrixXcd::Zero(2 * static_cast<Eigen::Index>(num_modes), 2 * static_cast<Eigen::Index>(num_modes))) {
    if (num_modes == 0) {
        throw std::invalid_argument("operator needs at least one mode");
    }
}

std::size_t QuadraticOperator::index(Ladder op) const {
    if (op.mode >= num_modes_) {
        throw std::out_of_range("ladder operator mode out of range");
    }
    return op.dagger ? num_modes_ + op.mode : op.mode;
}

QuadraticOperator &QuadraticOperator::add(Ladder first, Ladder second, Complex value) {
    coeff_(static_cast<Eigen::Index>(index(first)), static_cast<Eigen::Index>(index(second))) += value;
    return *this;
}

QuadraticOperator &QuadraticOperator::add_constant(double value) {
    constant_ += value;
    return *this;
}

QuadraticOperator &QuadraticOperator::operator+=(const QuadraticOperator &other) {
    if (other.num_modes_ != num_modes_) {
        throw std::invalid_argument("operators act on different mode counts");
    }
    constant_ += other.constant_;
    coeff_ += other.coeff_;
    return *this;
}

QuadraticOperator QuadraticOperator::operator*(double scale) const {
    QuadraticOperator out = *this;
    out.constant_ *= scale;
    out.coeff_ *= scale;
    return out;
}

std::pair<Complex, Eigen::MatrixXcd> QuadraticOperator::canonical() const {
    const Complex shift = 0.5 * coeff_.cwiseProduct(commutator_matrix(num_modes_)).sum();
    return {constant_ + shift, 0.5 * (coeff_ + coeff_.transpose())};
}

bool QuadraticOperator::is_hermitian(double tol) const {
    const auto [c, sym] = canonical();
    if (std::abs(c.imag()) > tol) {
        return false;
    }
    return (dagger_swap(sym.conjugate(), num_modes_) - sym).cwiseAbs().maxCoeff() <= tol;
}

QuadraticOperator QuadraticOperator::with_modes(std::size_t num_modes) const {
    if (num_modes < num_modes_) {
        throw std::invalid_argument("cannot drop modes from an operator");
    }
    QuadraticOperator out(num_modes, constant_);
    for (std::size_t u = 0; u < 2 * num_modes_; u++) {
        for (std::size_t v = 0; v < 2 * num_modes_; v++) {
            const Ladder lu{u % num_modes_, u >= num_modes_};
            const Ladder lv{v % num_modes_, v >= num_modes_};
            out.add(lu, lv, coeff_(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)));
        }
    }
    return out;
}

QuadraticOperator QuadraticOperator::substitute(const Eigen::MatrixXd &mode_map) const {
    const auto m = static_cast<Eigen::Index>(num_modes_);
    if (mode_map.rows() != m || mode_map.cols() != m) {
        throw std::invalid_argument("mode map has the wrong shape");
    }
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(2 * m, 2 * m);
    p.topLeftCorner(m, m) = mode_map.cast<Complex>();
    p.bottomRightCorner(m, m) = mode_map.cast<Complex>();
    QuadraticOperator out(num_modes_, constant_);
    out.coeff_ = p.transpose() * coeff_ * p;
    return out;
}

QuadraticOperator quadrature_squared(std::size_t mode, double theta, std::size_t num_modes) {
    QuadraticOperator op(num_modes);
    const Complex phase = std::exp(2.0 * kI * theta);
    op.add(create(mode), create(mode), 0.5 * phase);
    op.add(annihilate(mode), annihilate(mode), 0.5 * std::conj(phase));
    op.add(create(mode), annihilate(mode), 0.5);
    op.add(annihilate(mode), create(mode), 0.5);
    return op;
}

QuadraticOperator build_dhd_prime() {
    auto op = quadrature_squared(0, 0.0, 2);
    op += quadrature_squared(1, M_PI / 2, 2);
    return op;
}

QuadraticOperator conjugate_by_bs(const QuadraticOperator &op, std::size_t mode_i, std::size_t mode_j, double t) {
    if (!(t >= 0 && t <= 1)) {
        throw std::domain_error("transmissivity must lie in [0, 1]");
    }
    if (mode_i == mode_j || mode_i >= op.num_modes() || mode_j >= op.num_modes()) {
        throw std::invalid_argument("invalid beam splitter modes");
    }
    const auto n = static_cast<Eigen::Index>(op.num_modes());
    const auto i = static_cast<Eigen::Index>(mode_i);
    const auto j = static_cast<Eigen::Index>(mode_j);
    Eigen::MatrixXd w = Eigen::MatrixXd::Identity(n, n);
    w(i, i) = std::sqrt(t);
    w(i, j) = std::sqrt(1 - t);
    w(j, i) = -std::sqrt(1 - t);
    w(j, j) = std::sqrt(t);
    return op.substitute(w);
}

QuadraticOperator conjugate_by_bs(const QuadraticOperator &op, double t) {
    return conjugate_by_bs(op, 1, 0, t);
}

QuadraticOperator build_dhd_operator() {
    return conjugate_by_bs(build_dhd_prime(), 0.5);
}

QuadraticOperator build_opa_operator(double gain) {
    if (!(std::isfinite(gain) && gain > 1)) {
        throw std::domain_error("OPA gain must be > 1");
    }
    const double cross = std::sqrt(gain * (gain - 1));
    QuadraticOperator op(2);
    op.add(annihilate(0), create(0), gain - 1);
    op.add(create(0), create(1), cross);
    op.add(annihilate(0), annihilate(1), cross);
    op.add(create(1), annihilate(1), gain);
    return op;
}

QuadraticOperator build_pc_operator(double mu, double nu) {
    if (!(std::isfinite(mu) && std::isfinite(nu) && std::abs(mu * mu - nu * nu - 1) <= 1e-12)) {
        throw std::domain_error("PC parameters must satisfy mu^2 - nu^2 = 1");
    }
    QuadraticOperator op(3);
    op.add(annihilate(0), annihilate(1), nu);
    op.add(create(0), create(1), nu);
    op.add(annihilate(1), create(2), mu);
    op.add(create(1), annihilate(2), mu);
    return op;
}

QuadraticOperator number_operator(std::size_t mode, std::size_t num_modes) {
    QuadraticOperator op(num_modes);
    op.add(create(mode), annihilate(mode), 1.0);
    return op;
}

Eigen::MatrixXcd two_point_matrix(const GaussianState &state) {
    const auto m = static_cast<Eigen::Index>(state.num_modes());
    // xi = T r with a = (x + i p)/2 and a^dagger = (x - i p)/2.
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(2 * m, 2 * m);
    for (Eigen::Index k = 0; k < m; k++) {
        t(k, 2 * k) = 0.5;
        t(k, 2 * k + 1) = 0.5 * kI;
        t(m + k, 2 * k) = 0.5;
        t(m + k, 2 * k + 1) = -0.5 * kI;
    }
    // <r_a r_b> = V_ab + i Omega_ab since [x, p] = 2i.
    const Eigen::MatrixXcd rr = state.cov().cast<Complex>() + kI * symplectic_form(state.num_modes()).cast<Complex>();
    return t * rr * t.transpose();
}

MomentPair moments(const QuadraticOperator &op, const GaussianState &state) {
    if (op.num_modes() != state.num_modes()) {
        throw std::invalid_argument("operator and state have different mode counts");
    }
    if (!state.is_zero_mean()) {
        throw std::invalid_argument("moment engine supports zero-mean states only");
    }
    const Eigen::MatrixXcd g = two_point_matrix(state);
    const Eigen::MatrixXcd &f = op.coeff();
    const Complex mean = op.constant() + f.cwiseProduct(g).sum();
    // Wick: <uvwz> = <uv><wz> + <uw><vz> + <uz><vw>; the first pairing is mean^2.
    const Complex variance = (f.transpose() * g * f).cwiseProduct(g).sum() + (f * g * f).cwiseProduct(g).sum();
    double var = variance.real();
    const double tol = 1e-10 * std::max(1.0, mean.real() * mean.real());
    if (var < 0) {
        if (var < -tol) {
            throw std::logic_error("negative variance; operator is not Hermitian");
        }
        var = 0;
    }
    return {mean.real(), var};
}

}  // namespace qi
