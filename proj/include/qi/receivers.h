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

#ifndef QI_RECEIVERS_H
#define QI_RECEIVERS_H

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "qi/detection.h"
#include "qi/gaussian_state.h"
#include "qi/quadratic_operator.h"

namespace qi {

enum class Receiver { kDhd, kOpa, kPc, kCi };

inline constexpr std::array<Receiver, 4> kAllReceivers = {Receiver::kDhd, Receiver::kOpa, Receiver::kPc, Receiver::kCi};
inline constexpr std::array<Receiver, 3> kQuantumReceivers = {Receiver::kDhd, Receiver::kOpa, Receiver::kPc};

std::string_view receiver_name(Receiver receiver);
std::optional<Receiver> parse_receiver(std::string_view name);

/// Measurement operator of a quantum receiver on (return, idler[, vacuum]).
QuadraticOperator receiver_operator(Receiver receiver, const QiScenario &scenario);

/// Hypothesis state matched to the receiver's mode count (PC gets a vacuum port).
GaussianState receiver_state(Receiver receiver, const QiScenario &scenario, Hypothesis hypothesis);

/// Per-mode moments of the receiver operator via the Gaussian engine.
MomentPair engine_moments(Receiver receiver, const QiScenario &scenario, Hypothesis hypothesis);

DetectionStats engine_stats(Receiver receiver, const QiScenario &scenario);

/// Closed-form SNR of a quantum receiver. The PC expression is only defined
/// for mu = sqrt(2), nu = 1 and rejects other values.
double closed_form_snr(Receiver receiver, const QiScenario &scenario);

}  // namespace qi

#endif
