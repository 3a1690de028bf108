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

#ifndef QI_VALIDATE_H
#define QI_VALIDATE_H

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "qi/receivers.h"

namespace qi {

inline const std::vector<std::string> kValidationSuites = {"formula", "oracle", "erfc", "channel"};

struct ValidationCase {
    std::string name;
    double expected = 0;
    double actual = 0;
    double tolerance = 0;  // relative unless the name says otherwise
    bool passed = false;
};

struct SuiteReport {
    std::string name;
    std::vector<ValidationCase> cases;

    bool passed() const;
};

struct ValidationOptions {
    std::vector<std::string> suites;  // empty runs every suite
    std::vector<Receiver> receivers = {Receiver::kDhd, Receiver::kOpa, Receiver::kPc};
    /// Test hook: closed-form SNRs are scaled by (1 + formula_perturbation).
    double formula_perturbation = 0;
};

struct ValidationReport {
    std::vector<SuiteReport> suites;

    bool passed() const;
    /// {"passed": bool, "suites": [{"name", "passed", "cases", "failures": [...]}]}
    nlohmann::json to_json() const;
};

/// Throws std::invalid_argument for an unknown suite name.
ValidationReport run_validation(const ValidationOptions &options = {});

}  // namespace qi

#endif
