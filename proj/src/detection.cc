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

#include "qi/detection.h"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "qi/special_functions.h"

namespace qi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check(const DetectionStats &s) {
    if (!(s.dr0 >= 0 && s.dr1 >= 0 && s.k_modes >= 1 && std::isfinite(s.r0) && std::isfinite(s.r1))) {
        throw std::domain_error("invalid detection statistics");
    }
    if (s.r0 < s.r1) {
        throw std::domain_error("detection statistics must be canonical (r0 >= r1)");
    }
    if (s.dr0 + s.dr1 <= 0) {
        throw std::domain_error("degenerate decision: both variances are zero");
    }
}

// Argument of 1/2 erfc for a tail; zero variance degenerates to a step.
double tail_argument(double distance, double k_modes, double variance) {
    if (variance > 0) {
        return distance / std::sqrt(2 * k_modes * variance);
    }
    if (distance > 0) {
        return kInf;
    }
    return distance < 0 ? -kInf : 0.0;
}

}  // namespace

DetectionStats DetectionStats::from_moments(const MomentPair &absent, const MomentPair &present, double k_modes) {
    DetectionStats s{absent.mean, absent.variance, present.mean, present.variance, k_modes, false};
    if (s.r0 < s.r1) {
        std::swap(s.r0, s.r1);
        std::swap(s.dr0, s.dr1);
        s.swapped = true;
    }
    return s;
}

double optimal_threshold(const DetectionStats &stats) {
    check(stats);
    const double s0 = std::sqrt(stats.dr0);
    const double s1 = std::sqrt(stats.dr1);
    return stats.k_modes * (stats.r0 * s1 + stats.r1 * s0) / (s0 + s1);
}

namespace {

ErrorProbabilities from_tail_arguments(const DetectionStats &stats, double z0, double z1) {
    ErrorProbabilities e;
    e.log_false_alarm = std::log(0.5) + log_erfc(z0);
    e.log_miss = std::log(0.5) + log_erfc(z1);
    if (stats.swapped) {
        std::swap(e.log_false_alarm, e.log_miss);
    }
    e.false_alarm = std::exp(e.log_false_alarm);
    e.miss = std::exp(e.log_miss);
    e.log_total = std::log(0.5) + log_add_exp(e.log_false_alarm, e.log_miss);
    e.total = std::exp(e.log_total);
    return e;
}

}  // namespace

ErrorProbabilities error_probabilities(const DetectionStats &stats, double threshold) {
    check(stats);
    const double k = stats.k_modes;
    return from_tail_arguments(stats, tail_argument(k * stats.r0 - threshold, k, stats.dr0),
                               tail_argument(threshold - k * stats.r1, k, stats.dr1));
}

ErrorProbabilities error_probabilities(const DetectionStats &stats) {
    check(stats);
    const double k = stats.k_modes;
    const double s0 = std::sqrt(stats.dr0);
    const double s1 = std::sqrt(stats.dr1);
    const double gap = k * (stats.r0 - stats.r1) / (s0 + s1);
    return from_tail_arguments(stats, tail_argument(gap * s0, k, stats.dr0), tail_argument(gap * s1, k, stats.dr1));
}

double snr(const DetectionStats &stats) {
    check(stats);
    const double diff = stats.r0 - stats.r1;
    const double spread = std::sqrt(stats.dr0) + std::sqrt(stats.dr1);
    return stats.k_modes * diff * diff / (2 * spread * spread);
}

double snr_db(double snr_value) {
    return 10 * std::log10(snr_value);
}

double approx_error_from_snr(double snr_value) {
    if (!(snr_value > 0)) {
        throw std::domain_error("SNR must be positive for the asymptotic error");
    }
    return std::exp(-snr_value) / (2 * std::sqrt(M_PI * snr_value));
}

double log_error_from_snr(double snr_value) {
    if (!(snr_value >= 0)) {
        throw std::domain_error("SNR must be non-negative");
    }
    return std::log(0.5) + log_erfc(std::sqrt(snr_value));
}

double snr_from_log_error(double log_error) {
    if (std::isnan(log_error) || log_error > std::log(0.5) + 1e-9) {
        throw std::domain_error("error probability must not exceed 1/2");
    }
    if (log_error >= std::log(0.5)) {
        return 0;
    }
    const double y = inverse_log_erfc(log_error - std::log(0.5));
    return y * y;
}

}  // namespace qi
