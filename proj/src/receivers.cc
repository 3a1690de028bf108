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

#include "qi/receivers.h"

#include <cmath>
#include <stdexcept>

namespace qi {

std::string_view receiver_name(Receiver receiver) {
    switch (receiver) {
        case Receiver::kDhd:
            return "dhd";
        case Receiver::kOpa:
            return "opa";
        case Receiver::kPc:
            return "pc";
        case Receiver::kCi:
            return "ci";
    }
    return "?";
}

std::optional<Receiver> parse_receiver(std::string_view name) {
    for (auto r : kAllReceivers) {
        if (receiver_name(r) == name) {
            return r;
        }
    }
    return std::nullopt;
}

QuadraticOperator receiver_operator(Receiver receiver, const QiScenario &scenario) {
    switch (receiver) {
        case Receiver::kDhd:
            return build_dhd_operator();
        case Receiver::kOpa:
            return build_opa_operator(scenario.opa_gain);
        case Receiver::kPc:
            return build_pc_operator(scenario.pc_mu, scenario.pc_nu);
        case Receiver::kCi:
            break;
    }
    throw std::invalid_argument("classical illumination has no quadratic receiver operator");
}

GaussianState receiver_state(Receiver receiver, const QiScenario &scenario, Hypothesis hypothesis) {
    auto state = qi_channel(scenario.n_s, scenario.n_b, scenario.kappa, hypothesis);
    if (receiver == Receiver::kPc) {
        return tensor_product(state, make_vacuum(1));
    }
    return state;
}

MomentPair engine_moments(Receiver receiver, const QiScenario &scenario, Hypothesis hypothesis) {
    scenario.validate();
    return moments(receiver_operator(receiver, scenario), receiver_state(receiver, scenario, hypothesis));
}

DetectionStats engine_stats(Receiver receiver, const QiScenario &scenario) {
    scenario.validate();
    const auto op = receiver_operator(receiver, scenario);
    return DetectionStats::from_moments(moments(op, receiver_state(receiver, scenario, Hypothesis::kAbsent)),
                                        moments(op, receiver_state(receiver, scenario, Hypothesis::kPresent)),
                                        scenario.k_modes);
}

double closed_form_snr(Receiver receiver, const QiScenario &scenario) {
    scenario.validate();
    const double k = scenario.kappa;
    const double kk = scenario.k_modes;
    const double a = 2 * scenario.n_s + 1;
    const double b = 2 * scenario.n_b + 1;
    const double c = 2 * std::sqrt(scenario.n_s * (scenario.n_s + 1));
    const double sk = std::sqrt(k);
    switch (receiver) {
        case Receiver::kDhd: {
            const double num = k * (b - a) + 2 * c * sk;
            const double den = std::abs(a * (1 + k) + b * (1 - k) - 2 * c * sk) + std::abs(a + b);
            return kk * num * num / (2 * den * den);
        }
        case Receiver::kPc: {
            if (std::abs(scenario.pc_mu - std::sqrt(2.0)) > 1e-12 || std::abs(scenario.pc_nu - 1) > 1e-12) {
                throw std::domain_error("closed-form PC SNR is defined for mu = sqrt(2), nu = 1 only");
            }
            const double absent = a * (b + 2) + 1;
            const double den = std::sqrt(k * (a * a - a * b + c * c) + absent) + std::sqrt(absent);
            return kk * k * c * c / (den * den);
        }
        case Receiver::kOpa: {
            const double g = scenario.opa_gain;
            const double gm = g - 1;
            const double cross = std::sqrt(k * g * gm);
            const double kg = k * gm + g;
            const double d0 = (a * g + b * gm) * (a * g + b * gm) - 1;
            const double d1 = a * a * kg * kg - 2 * b * (k - 1) * gm * (a * kg + 2 * c * cross) +
                              4 * a * c * cross * kg + b * b * (k - 1) * (k - 1) * gm * gm + 4 * c * c * k * gm * g - 1;
            const double num = k * gm * (a - b) + 2 * c * cross;
            const double den = std::sqrt(d0) + std::sqrt(d1);
            return kk * num * num / (2 * den * den);
        }
        case Receiver::kCi:
            break;
    }
    throw std::invalid_argument("classical illumination has no closed-form SNR; use ci_chernoff");
}

}  // namespace qi
