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

#ifndef QI_FOCK_H
#define QI_FOCK_H

#include <Eigen/Dense>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "qi/gaussian_state.h"
#include "qi/quadratic_operator.h"

namespace qi {

/// Raised when a Fock truncation cannot hold the requested state.
class TruncationError : public std::runtime_error {
   public:
    TruncationError(const std::string &what, std::size_t required_dim)
        : std::runtime_error(what), required_dim_(required_dim) {}
    std::size_t required_dim() const { return required_dim_; }

   private:
    std::size_t required_dim_;
};

/// Dense operator in a truncated number basis.
struct FockMatrix {
    Eigen::MatrixXcd entries;

    std::size_t dim() const { return static_cast<std::size_t>(entries.rows()); }
};

/// Tail mass allowed when truncating thermal distributions.
inline constexpr double kThermalTail = 1e-10;

/// Smallest dim with (n/(n+1))^dim < tail.
std::size_t required_thermal_dim(double n_mean, double tail = kThermalTail);

/// Bose-Einstein weights n^k/(n+1)^(k+1), k < dim, not renormalized.
std::vector<double> thermal_weights(double n_mean, std::size_t dim);

/// Thermal density matrix. Throws TruncationError when the dropped tail
/// exceeds kThermalTail.
FockMatrix thermal_fock(double n_b, std::size_t dim);

/// <m|D(beta)|n> from the associated-Laguerre closed form, evaluated with
/// log-factorials and a normalized Laguerre recurrence so that no factorial
/// is ever formed.
FockMatrix displacement_matrix(Complex beta, std::size_t dim);

/// |<m|D(beta)|n>|^2 for |beta|^2 = x; symmetric in (m, n).
Eigen::MatrixXd displacement_probabilities(double x, std::size_t dim);

/// Golden-section search for the minimum of a unimodal function on [lo, hi].
/// Returns (argmin, minimum).
std::pair<double, double> golden_section_minimize(const std::function<double(double)> &f, double lo, double hi,
                                                  double tol);

/// How the Chernoff quantity is turned into an SNR comparable with the
/// receivers' SNR^(K).
enum class CiConvention {
    /// S with 1/2 erfc(sqrt(S)) = 1/2 Q^K, the same error map as the receivers.
    kErfcEquivalent,
    /// Bare exponent -K ln Q.
    kExponent,
};

struct ChernoffResult {
    double q_value = 1;   // min_s Tr(rho0^s rho1^(1-s)), single mode
    double s_star = 0.5;
    double exponent = 0;  // -K ln q_value
    double snr = 0;       // per the chosen convention
    std::size_t dim = 0;
    double trace_deficit = 0;
};

/// Single-mode Chernoff problem for classical illumination: rho0 is thermal
/// N_B, rho1 = D(beta) thermal((1-kappa) N_B) D(beta)^dagger with
/// beta = sqrt(kappa N_S). Both thermal factors are diagonal, so
/// Q(s) = sum_mn (rho0^s)_mm |D_mn|^2 (rho_th^(1-s))_nn.
class ChernoffProblem {
   public:
    ChernoffProblem(double n_s, double n_b, double kappa, std::size_t dim = 0);

    double q(double s) const;
    std::size_t dim() const { return dim_; }
    double trace_deficit() const { return trace_deficit_; }

   private:
    std::size_t dim_;
    Eigen::VectorXd log_p0_;
    Eigen::VectorXd log_p1_;
    Eigen::MatrixXd overlap_;
    double trace_deficit_ = 0;
};

/// Maximum trace deficit tolerated by the Chernoff computation.
inline constexpr double kMaxTraceDeficit = 1e-8;

ChernoffResult ci_chernoff(double n_s, double n_b, double kappa, double k_modes,
                           CiConvention convention = CiConvention::kErfcEquivalent, std::size_t dim = 0);

/// Brute-force mean/variance of a 2-mode (return, idler) or 3-mode
/// (return, idler, vacuum) operator, building the state in a truncated number
/// basis from the TMSV amplitudes, a thermal bath and a beam-splitter unitary.
/// Restricted to n_s <= 0.5, n_b <= 1 and dim_per_mode <= 30.
MomentPair fock_oracle_moments(const QuadraticOperator &op, const QiScenario &scenario, Hypothesis hypothesis,
                               std::size_t dim_per_mode);

}  // namespace qi

#endif
