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

#include "qi/validate.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qi/fock.h"
#include "qi/special_functions.h"

namespace qi {

namespace {

ValidationCase relative_case(std::string name, double expected, double actual, double tol) {
    const double scale = std::max(std::abs(expected), 1e-300);
    const bool ok = std::abs(actual - expected) <= tol * scale;
    return {std::move(name), expected, actual, tol, ok};
}

ValidationCase absolute_case(std::string name, double expected, double actual, double tol) {
    const bool ok = std::abs(actual - expected) <= tol;
    return {std::move(name) + " (abs)", expected, actual, tol, ok};
}

SuiteReport formula_suite(const ValidationOptions &options) {
    SuiteReport suite{"formula", {}};
    for (auto r : options.receivers) {
        if (r == Receiver::kCi) {
            continue;
        }
        for (double kappa : {1e-4, 1e-3, 0.01, 0.1, 0.5, 0.9}) {
            for (double n_s : {1e-4, 1e-2, 0.1, 1.0}) {
                for (double n_b : {0.5, 30.0, 100.0}) {
                    QiScenario s;
                    s.kappa = kappa;
                    s.n_s = n_s;
                    s.n_b = n_b;
                    const double formula = closed_form_snr(r, s) * (1 + options.formula_perturbation);
                    const double engine = snr(engine_stats(r, s));
                    suite.cases.push_back(relative_case(
                        fmt::format("{} kappa={:g} n_s={:g} n_b={:g}", receiver_name(r), kappa, n_s, n_b), formula,
                        engine, 1e-9));
                }
            }
        }
    }
    return suite;
}

SuiteReport oracle_suite(const ValidationOptions &options) {
    SuiteReport suite{"oracle", {}};
    QiScenario s;
    s.kappa = 0.3;
    s.n_s = 0.1;
    s.n_b = 0.5;
    for (auto r : options.receivers) {
        if (r == Receiver::kCi) {
            continue;
        }
        for (auto h : {Hypothesis::kAbsent, Hypothesis::kPresent}) {
            const auto op = receiver_operator(r, s);
            const auto engine = moments(op, receiver_state(r, s, h));
            const auto fock = fock_oracle_moments(op, s, h, 25);
            const char *hyp = h == Hypothesis::kAbsent ? "H0" : "H1";
            suite.cases.push_back(
                relative_case(fmt::format("{} {} mean", receiver_name(r), hyp), engine.mean, fock.mean, 1e-6));
            suite.cases.push_back(relative_case(fmt::format("{} {} variance", receiver_name(r), hyp), engine.variance,
                                                fock.variance, 1e-6));
        }
    }
    return suite;
}

SuiteReport erfc_suite() {
    SuiteReport suite{"erfc", {}};
    const std::pair<double, double> table[] = {
        {0.0, 1.0},
        {0.5, 0.47950012218695346232},
        {1.0, 0.15729920705028513066},
        {2.0, 0.0046777349810472658379},
        {3.0, 0.000022090496998585441373},
        {-1.0, 1.8427007929497148693},
        {-2.5, 1.9995930479825550411},
        {6.0, 2.1519736712498913117e-17},
        {10.0, 2.088487583762544757e-45},
    };
    for (const auto &[x, v] : table) {
        suite.cases.push_back(relative_case(fmt::format("erfc({:g})", x), v, erfc(x), 1e-14));
    }
    const std::pair<double, double> logs[] = {
        {30.0, -903.9741171106438780796002},
        {100.0, -10005.17758512266433257047},
        {1000.0, -1000007.480120721906212141},
    };
    for (const auto &[x, v] : logs) {
        suite.cases.push_back(relative_case(fmt::format("log_erfc({:g})", x), v, log_erfc(x), 1e-13));
    }
    for (double x = -4; x <= 4; x += 0.5) {
        suite.cases.push_back(absolute_case(fmt::format("erfc({0:g}) + erfc(-{0:g})", x), 2.0, erfc(x) + erfc(-x), 1e-15));
    }
    for (double y : {0.1, 1.0, 4.0, 5.0, 12.0, 40.0}) {
        suite.cases.push_back(
            relative_case(fmt::format("inverse_log_erfc(log_erfc({:g}))", y), y, inverse_log_erfc(log_erfc(y)), 1e-10));
    }
    return suite;
}

SuiteReport channel_suite() {
    SuiteReport suite{"channel", {}};
    for (double kappa : {0.0, 1e-3, 0.3, 1.0}) {
        for (double n_s : {0.0, 0.01, 1.0}) {
            for (double n_b : {0.0, 0.5, 30.0}) {
                for (auto h : {Hypothesis::kAbsent, Hypothesis::kPresent}) {
                    const auto closed = qi_channel(n_s, n_b, kappa, h);
                    const auto composed = qi_channel_composed(n_s, n_b, kappa, h);
                    const char *hyp = h == Hypothesis::kAbsent ? "H0" : "H1";
                    const auto tag = fmt::format("kappa={:g} n_s={:g} n_b={:g} {}", kappa, n_s, n_b, hyp);
                    suite.cases.push_back(absolute_case("closed vs composed cov " + tag, 0,
                                                        (closed.cov() - composed.cov()).cwiseAbs().maxCoeff(),
                                                        1e-12 * (1 + 2 * n_b)));
                    suite.cases.push_back(absolute_case("idler marginal " + tag, 2 * n_s + 1, closed.cov()(2, 2), 1e-12));
                    suite.cases.push_back(
                        absolute_case("min symplectic eigenvalue >= 1 " + tag, 0,
                                      std::min(0.0, symplectic_eigenvalues(closed.cov()).minCoeff() - 1 + 1e-9), 0));
                }
            }
        }
    }
    return suite;
}

}  // namespace

bool SuiteReport::passed() const {
    return std::all_of(cases.begin(), cases.end(), [](const ValidationCase &c) { return c.passed; });
}

bool ValidationReport::passed() const {
    return std::all_of(suites.begin(), suites.end(), [](const SuiteReport &s) { return s.passed(); });
}

nlohmann::json ValidationReport::to_json() const {
    auto list = nlohmann::json::array();
    for (const auto &s : suites) {
        auto failures = nlohmann::json::array();
        for (const auto &c : s.cases) {
            if (!c.passed) {
                failures.push_back(
                    {{"name", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"tolerance", c.tolerance}});
            }
        }
        list.push_back({{"name", s.name}, {"passed", s.passed()}, {"cases", s.cases.size()}, {"failures", failures}});
    }
    return {{"passed", passed()}, {"suites", list}};
}

ValidationReport run_validation(const ValidationOptions &options) {
    for (const auto &name : options.suites) {
        if (std::find(kValidationSuites.begin(), kValidationSuites.end(), name) == kValidationSuites.end()) {
            throw std::invalid_argument(fmt::format("unknown validation suite '{}'", name));
        }
    }
    const auto wanted = [&](const std::string &name) {
        return options.suites.empty() ||
               std::find(options.suites.begin(), options.suites.end(), name) != options.suites.end();
    };
    ValidationReport report;
    if (wanted("formula")) report.suites.push_back(formula_suite(options));
    if (wanted("oracle")) report.suites.push_back(oracle_suite(options));
    if (wanted("erfc")) report.suites.push_back(erfc_suite());
    if (wanted("channel")) report.suites.push_back(channel_suite());
    return report;
}

}  // namespace qi
