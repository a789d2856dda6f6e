// Copyright 2026 The rqc-sim Authors
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


#pragma once

// Invariant suite behind `rqc-sim verify`.

#include <cstdint>
#include <string>
#include <vector>

#include "rqc/report.hpp"

namespace rqc::verify {

struct CheckResult {
    std::string module;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct VerifyOptions {
    std::uint64_t seed = 0;
    int threads = 0;
};

std::vector<CheckResult> run_all(const VerifyOptions& options);

report::Report to_report(const std::vector<CheckResult>& checks, const VerifyOptions& options);

bool all_passed(const std::vector<CheckResult>& checks);

}  // namespace rqc::verify
