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

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <limits>

#include "qi/detection.h"

namespace qi {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::vector<double> log_factorials(std::size_t n) {
    std::vector<double> lf(n + 1);
    for (std::size_t k = 0; k <= n; k++) {
        lf[k] = std::lgamma(static_cast<double>(k) + 1);
    }
    return lf;
}

Eigen::VectorXd log_thermal_weights(double n_mean, std::size_t dim) {
    Eigen::VectorXd lw(static_cast<Eigen::Index>(dim));
    for (std::size_t k = 0; k < dim; k++) {
        if (n_mean == 0) {
            lw[static_cast<Eigen::Index>(k)] = k == 0 ? 0.0 : kNegInf;
        } else {
            lw[static_cast<Eigen::Index>(k)] =
                static_cast<double>(k) * std::log(n_mean) - static_cast<double>(k + 1) * std::log1p(n_mean);
        }
    }
    return lw;
}

// Visits every entry m >= n of the displacement matrix for |beta|^2 = x as
// (m, n, log|D_mn|, sign of the Laguerre factor). With alpha = m - n:
//   |D_mn| = sqrt(n!/m!) |beta|^alpha e^{-x/2} |L_n^alpha(x)|,
// and L_n^alpha = C(m, n) l_n with l_n from the normalized recurrence
//   l_{k+1} = [(2k+1+alpha-x) l_k - k l_{k-1}] / (k+1+alpha),
// which stays O(e^{x/2}) for x >= 0.
template <typename Visit>
void for_each_displacement_entry(double x, std::size_t dim, Visit &&visit) {
    const auto lf = log_factorials(dim);
    const double log_abs_beta = 0.5 * std::log(x);
    for (std::size_t alpha = 0; alpha < dim; alpha++) {
        const double a = static_cast<double>(alpha);
        double prev = 0;
        double cur = 1;
        for (std::size_t n = 0; n + alpha < dim; n++) {
            if (n == 1) {
                prev = 1;
                cur = (1 + a - x) / (1 + a);
            } else if (n > 1) {
                const double k = static_cast<double>(n - 1);
                const double next = ((2 * k + 1 + a - x) * cur - k * prev) / (k + 1 + a);
                prev = cur;
                cur = next;
            }
            const std::size_t m = n + alpha;
            const double log_mag = 0.5 * (lf[m] - lf[n]) - lf[alpha] + a * log_abs_beta - 0.5 * x + std::log(std::abs(cur));
            visit(m, n, log_mag, cur < 0 ? -1.0 : 1.0);
        }
    }
}

}  // namespace

std::size_t required_thermal_dim(double n_mean, double tail) {
    if (!(n_mean >= 0) || !(tail > 0 && tail < 1)) {
        throw std::domain_error("invalid thermal truncation request");
    }
    if (n_mean == 0) {
        return 1;
    }
    const double ratio = std::log(n_mean) - std::log1p(n_mean);
    return static_cast<std::size_t>(std::floor(std::log(tail) / ratio)) + 1;
}

std::vector<double> thermal_weights(double n_mean, std::size_t dim) {
    if (!(n_mean >= 0)) {
        throw std::domain_error("mean photon number must be >= 0");
    }
    const auto lw = log_thermal_weights(n_mean, dim);
    std::vector<double> w(dim);
    for (std::size_t k = 0; k < dim; k++) {
        w[k] = std::exp(lw[static_cast<Eigen::Index>(k)]);
    }
    return w;
}

FockMatrix thermal_fock(double n_b, std::size_t dim) {
    const std::size_t need = required_thermal_dim(n_b);
    if (dim < need) {
        throw TruncationError("thermal truncation leaves a tail above 1e-10", need);
    }
    const auto w = thermal_weights(n_b, dim);
    FockMatrix out{Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim))};
    for (std::size_t k = 0; k < dim; k++) {
        out.entries(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = w[k];
    }
    return out;
}

FockMatrix displacement_matrix(Complex beta, std::size_t dim) {
    if (dim == 0) {
        throw std::invalid_argument("dimension must be positive");
    }
    const auto d = static_cast<Eigen::Index>(dim);
    FockMatrix out{Eigen::MatrixXcd::Zero(d, d)};
    const double x = std::norm(beta);
    if (x == 0) {
        out.entries.setIdentity();
        return out;
    }
    const double phi = std::arg(beta);
    for_each_displacement_entry(x, dim, [&](std::size_t m, std::size_t n, double log_mag, double sign) {
        const double mag = sign * std::exp(log_mag);
        const double alpha = static_cast<double>(m - n);
        // m >= n: beta^alpha; mirrored entry: (-beta*)^alpha.
        out.entries(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n)) = std::polar(mag, alpha * phi);
        if (m != n) {
            const double mirror = (m - n) % 2 == 0 ? mag : -mag;
            out.entries(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m)) = std::polar(mirror, -alpha * phi);
        }
    });
    return out;
}

Eigen::MatrixXd displacement_probabilities(double x, std::size_t dim) {
    if (!(x >= 0) || dim == 0) {
        throw std::invalid_argument("invalid displacement request");
    }
    const auto d = static_cast<Eigen::Index>(dim);
    if (x == 0) {
        return Eigen::MatrixXd::Identity(d, d);
    }
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(d, d);
    for_each_displacement_entry(x, dim, [&](std::size_t m, std::size_t n, double log_mag, double) {
        const double v = std::exp(2 * log_mag);
        p(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n)) = v;
        p(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m)) = v;
    });
    return p;
}

std::pair<double, double> golden_section_minimize(const std::function<double(double)> &f, double lo, double hi,
                                                  double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1) / 2;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return fc < fd ? std::make_pair(c, fc) : std::make_pair(d, fd);
}

ChernoffProblem::ChernoffProblem(double n_s, double n_b, double kappa, std::size_t dim) {
    QiScenario{.kappa = kappa, .n_s = n_s, .n_b = n_b}.validate();
    const double x = kappa * n_s;
    const double n1 = (1 - kappa) * n_b;
    if (dim == 0) {
        const auto thermal = static_cast<double>(required_thermal_dim(n_b));
        const double coherent = x + 12 * std::sqrt(x);
        dim = static_cast<std::size_t>(std::ceil(1.2 * std::max(thermal, coherent))) + 16;
    }
    dim_ = dim;
    log_p0_ = log_thermal_weights(n_b, dim);
    log_p1_ = log_thermal_weights(n1, dim);
    const double mass0 = log_p0_.array().exp().sum();
    const double mass1 = log_p1_.array().exp().sum();
    log_p0_.array() -= std::log(mass0);
    log_p1_.array() -= std::log(mass1);
    overlap_ = displacement_probabilities(x, dim);
    // Mass of the displaced state that stays inside the truncation.
    const double kept = (overlap_ * log_p1_.array().exp().matrix()).sum();
    trace_deficit_ = std::max({1 - mass0, 1 - mass1, 1 - kept});
    if (trace_deficit_ > kMaxTraceDeficit) {
        throw TruncationError("Chernoff truncation too small", 2 * dim);
    }
}

double ChernoffProblem::q(double s) const {
    const Eigen::VectorXd a = (s * log_p0_.array()).exp();
    const Eigen::VectorXd b = ((1 - s) * log_p1_.array()).exp();
    return a.dot(overlap_ * b);
}

ChernoffResult ci_chernoff(double n_s, double n_b, double kappa, double k_modes, CiConvention convention,
                           std::size_t dim) {
    if (!(k_modes >= 1)) {
        throw std::domain_error("k_modes must be >= 1");
    }
    const ChernoffProblem problem(n_s, n_b, kappa, dim);
    const auto [s_star, q_min] = golden_section_minimize([&](double s) { return problem.q(s); }, 1e-6, 1 - 1e-6, 1e-6);
    ChernoffResult r;
    r.q_value = std::min(q_min, 1.0);
    r.s_star = s_star;
    r.exponent = -k_modes * std::log(r.q_value);
    r.snr = convention == CiConvention::kExponent ? r.exponent : snr_from_log_error(std::log(0.5) - r.exponent);
    r.dim = problem.dim();
    r.trace_deficit = problem.trace_deficit();
    return r;
}

namespace {

using SparseC = Eigen::SparseMatrix<Complex>;

// Single-mode ladder operator embedded in a tensor space (mode 0 most significant).
SparseC embedded_ladder(const std::vector<std::size_t> &dims, std::size_t mode, bool dagger) {
    std::size_t total = 1;
    for (auto d : dims) {
        total *= d;
    }
    std::size_t stride = 1;
    for (std::size_t k = dims.size(); k-- > mode + 1;) {
        stride *= dims[k];
    }
    std::vector<Eigen::Triplet<Complex>> entries;
    for (std::size_t idx = 0; idx < total; idx++) {
        const std::size_t level = (idx / stride) % dims[mode];
        if (dagger) {
            if (level + 1 < dims[mode]) {
                entries.emplace_back(static_cast<int>(idx + stride), static_cast<int>(idx),
                                     std::sqrt(static_cast<double>(level + 1)));
            }
        } else if (level > 0) {
            entries.emplace_back(static_cast<int>(idx - stride), static_cast<int>(idx),
                                 std::sqrt(static_cast<double>(level)));
        }
    }
    SparseC out(static_cast<int>(total), static_cast<int>(total));
    out.setFromTriplets(entries.begin(), entries.end());
    return out;
}

SparseC operator_matrix(const QuadraticOperator &op, const std::vector<std::size_t> &dims) {
    const std::size_t m = op.num_modes();
    std::vector<SparseC> ladders;
    for (std::size_t u = 0; u < 2 * m; u++) {
        ladders.push_back(embedded_ladder(dims, u % m, u >= m));
    }
    const auto total = ladders[0].rows();
    SparseC out(total, total);
    out.setIdentity();
    out *= op.constant();
    for (std::size_t u = 0; u < 2 * m; u++) {
        for (std::size_t v = 0; v < 2 * m; v++) {
            const Complex f = op.coeff()(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v));
            if (f != Complex(0)) {
                out += f * SparseC(ladders[u] * ladders[v]);
            }
        }
    }
    return out;
}

double binomial(std::size_t n, std::size_t k) {
    return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

// Amplitude <r, l| U |n, k> of the splitter a_R = sqrt(t) a_S + sqrt(1-t) a_B,
// a_L = -sqrt(1-t) a_S + sqrt(t) a_B, for input |n>_S |k>_B and r + l = n + k.
double splitter_amplitude(std::size_t n, std::size_t k, std::size_t r, double t) {
    const std::size_t l = n + k - r;
    const double ct = std::sqrt(t);
    const double st = std::sqrt(1 - t);
    double sum = 0;
    // a_S^dag = ct a_R^dag - st a_L^dag,  a_B^dag = st a_R^dag + ct a_L^dag.
    for (std::size_t j = 0; j <= std::min(n, r); j++) {
        const std::size_t q = r - j;
        if (q > k) {
            continue;
        }
        const double sign = (n - j) % 2 == 0 ? 1.0 : -1.0;
        sum += sign * binomial(n, j) * binomial(k, q) * std::pow(ct, static_cast<double>(j)) *
               std::pow(st, static_cast<double>(n - j)) * std::pow(st, static_cast<double>(q)) *
               std::pow(ct, static_cast<double>(k - q));
    }
    const double norm = 0.5 * (std::lgamma(r + 1.0) + std::lgamma(l + 1.0) - std::lgamma(n + 1.0) - std::lgamma(k + 1.0));
    return sum * std::exp(norm);
}

}  // namespace

MomentPair fock_oracle_moments(const QuadraticOperator &op, const QiScenario &scenario, Hypothesis hypothesis,
                               std::size_t dim_per_mode) {
    scenario.validate();
    if (scenario.n_s > 0.5 || scenario.n_b > 1 || dim_per_mode > 30 || dim_per_mode < 2) {
        throw std::invalid_argument("Fock oracle is limited to n_s <= 0.5, n_b <= 1, 2 <= dim <= 30");
    }
    if (op.num_modes() != 2 && op.num_modes() != 3) {
        throw std::invalid_argument("Fock oracle handles 2-mode or 3-mode (with vacuum) operators");
    }
    const std::size_t d = dim_per_mode;
    // Room for two extra quanta so that M|phi> is exact for phi inside d levels.
    std::vector<std::size_t> dims = {d + 2, d + 2};
    if (op.num_modes() == 3) {
        dims.push_back(3);
    }
    const std::size_t stride_r = dims.size() == 3 ? (d + 2) * 3 : d + 2;
    const std::size_t stride_i = dims.size() == 3 ? 3 : 1;
    std::size_t total = 1;
    for (auto x : dims) {
        total *= x;
    }
    const SparseC m = operator_matrix(op, dims);

    const double t = hypothesis == Hypothesis::kPresent ? scenario.kappa : 0.0;
    const auto source = thermal_weights(scenario.n_s, d);  // |c_n|^2 of the TMSV
    const auto bath = thermal_weights(scenario.n_b, d);

    double trace = 0;
    double first = 0;
    double second = 0;
    Eigen::VectorXcd phi(static_cast<Eigen::Index>(total));
    for (std::size_t k = 0; k < d; k++) {
        for (std::size_t l = 0; l < 2 * d; l++) {
            phi.setZero();
            for (std::size_t n = 0; n < d; n++) {
                if (n + k < l) {
                    continue;
                }
                const std::size_t r = n + k - l;
                if (r >= d) {
                    continue;
                }
                phi[static_cast<Eigen::Index>(r * stride_r + n * stride_i)] =
                    std::sqrt(source[n]) * splitter_amplitude(n, k, r, t);
            }
            const double weight = bath[k];
            const double norm = phi.squaredNorm();
            if (norm == 0) {
                continue;
            }
            const Eigen::VectorXcd m_phi = m * phi;
            trace += weight * norm;
            first += weight * phi.dot(m_phi).real();
            second += weight * m_phi.squaredNorm();
        }
    }
    if (1 - trace > kMaxTraceDeficit) {
        throw TruncationError("Fock oracle truncation too small", 2 * d);
    }
    const double mean = first / trace;
    return {mean, std::max(0.0, second / trace - mean * mean)};
}

}  // namespace qi
