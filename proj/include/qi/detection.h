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

#ifndef QI_DETECTION_H
#define QI_DETECTION_H

#include "qi/quadratic_operator.h"

namespace qi {

/// Per-mode receiver statistics under both hypotheses, K mode pairs.
///
/// Canonical orientation has r0 >= r1, so "target present" is decided for
/// outcomes below the threshold. Receivers whose mean grows with the target
/// (OPA, PC) are stored with the hypothesis labels swapped and `swapped` set;
/// every quantity below is invariant under the swap except the labels of the
/// two error components.
struct DetectionStats {
    double r0 = 0;
    double dr0 = 0;
    double r1 = 0;
    double dr1 = 0;
    double k_modes = 1;
    bool swapped = false;

    static DetectionStats from_moments(const MomentPair &absent, const MomentPair &present, double k_modes);
};

struct ErrorProbabilities {
    double false_alarm = 0;  // P(1|0)
    double miss = 0;         // P(0|1)
    double total = 0;
    double log_false_alarm = 0;
    double log_miss = 0;
    double log_total = 0;
};

/// Threshold K (R0 sqrt(dR1) + R1 sqrt(dR0)) / (sqrt(dR0) + sqrt(dR1)) that
/// equalizes the two error components. Throws std::domain_error when both
/// variances vanish.
double optimal_threshold(const DetectionStats &stats);

/// Gaussian (large-K) error probabilities for a threshold, reported in the
/// caller's labels (un-swapped). Zero variances are treated as step functions.
ErrorProbabilities error_probabilities(const DetectionStats &stats, double threshold);

/// Same, at optimal_threshold(). The distances to the threshold are formed
/// from R0 - R1 directly instead of subtracting two numbers of size K R.
ErrorProbabilities error_probabilities(const DetectionStats &stats);

/// K (R0 - R1)^2 / [2 (sqrt(dR0) + sqrt(dR1))^2].
double snr(const DetectionStats &stats);

double snr_db(double snr_value);

/// exp(-SNR) / (2 sqrt(pi SNR)); asymptotic, only trustworthy for SNR >> 1.
double approx_error_from_snr(double snr_value);

/// ln of the exact error 1/2 erfc(sqrt(SNR)) at the optimal threshold.
double log_error_from_snr(double snr_value);

/// SNR whose Gaussian-decision error 1/2 erfc(sqrt(SNR)) equals exp(log_error).
double snr_from_log_error(double log_error);

}  // namespace qi

#endif
