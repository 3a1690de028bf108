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

#include "qi/special_functions.h"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qi {

namespace {

constexpr double kTailStart = 5.0;

void require_not_nan(double x) {
    if (std::isnan(x)) {
        throw std::domain_error("erfc of NaN");
    }
}

// Continued fraction for erfcx(x), x >= kTailStart (modified Lentz):
//   sqrt(pi) erfcx(x) = 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))).
double erfcx_continued_fraction(double x) {
    constexpr double tiny = 1e-300;
    double f = x;
    double c = x;
    double d = 0;
    for (int n = 1; n < 500; n++) {
        const double a = 0.5 * n;
        d = x + a * d;
        d = d == 0 ? tiny : d;
        c = x + a / c;
        c = c == 0 ? tiny : c;
        d = 1 / d;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1) < 1e-16) {
            break;
        }
    }
    return 1 / (f * std::sqrt(M_PI));
}

}  // namespace

double erfc(double x) {
    require_not_nan(x);
    return std::erfc(x);
}

double erfcx(double x) {
    require_not_nan(x);
    if (x < 0) {
        throw std::domain_error("erfcx is only provided for x >= 0");
    }
    if (x < kTailStart) {
        return std::exp(x * x) * std::erfc(x);
    }
    return erfcx_continued_fraction(x);
}

double log_erfc(double x) {
    require_not_nan(x);
    if (x == std::numeric_limits<double>::infinity()) {
        return -std::numeric_limits<double>::infinity();
    }
    if (std::abs(x) < 0.5) {
        return std::log1p(-std::erf(x));
    }
    if (x < kTailStart) {
        return std::log(std::erfc(x));
    }
    return -x * x + std::log(erfcx_continued_fraction(x));
}

double inverse_log_erfc(double log_value) {
    if (std::isnan(log_value) || log_value > 0) {
        throw std::domain_error("inverse_log_erfc needs a value in (-inf, 0]");
    }
    if (log_value == 0) {
        return 0;
    }
    if (std::isinf(log_value)) {
        return std::numeric_limits<double>::infinity();
    }
    // log_erfc(y) <= -y^2 bounds the root by sqrt(-log_value).
    double lo = 0;
    double hi = std::sqrt(-log_value) + 1;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; it++) {
        const double mid = 0.5 * (lo + hi);
        if (log_erfc(mid) > log_value) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double log_add_exp(double a, double b) {
    if (a < b) {
        std::swap(a, b);
    }
    if (b == -std::numeric_limits<double>::infinity()) {
        return a;
    }
    return a + std::log1p(std::exp(b - a));
}

}  // namespace qi
