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

#ifndef QI_SPECIAL_FUNCTIONS_H
#define QI_SPECIAL_FUNCTIONS_H

namespace qi {

/// Complementary error function. Underflows to 0 past x ~ 26.5; use
/// `log_erfc` for deep tails. Throws std::domain_error on NaN.
double erfc(double x);

/// ln erfc(x), accurate in the far tail (continued fraction for x >= 5).
double log_erfc(double x);

/// exp(x^2) erfc(x) for x >= 0.
double erfcx(double x);

/// Smallest y >= 0 with log_erfc(y) = log_value, for log_value in (-inf, 0].
double inverse_log_erfc(double log_value);

/// ln(exp(a) + exp(b)) without overflow.
double log_add_exp(double a, double b);

}  // namespace qi

#endif
