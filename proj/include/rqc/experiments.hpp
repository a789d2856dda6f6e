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

// One report builder per CLI subcommand.

#include <cstdint>
#include <string>
#include <vector>

#include "rqc/pipeline.hpp"
#include "rqc/report.hpp"

namespace rqc::exp {

struct WalkConfig {
    int target_n = 20;
    int start_k = 1;
    std::int64_t max_steps = 0;
    std::int64_t trials = 100000;
    std::uint64_t seed = 0;
    int threads = 0;
};

report::Report walk(const WalkConfig& config);

struct GrowthQuantumConfig {
    int k = 3;
    int measurements = 30;
    std::uint64_t seed = 0;
    /// Random partner choices for the singlet-discard check.
    int discard_trials = 8;
};

report::Report growth_quantum(const GrowthQuantumConfig& config);

struct LocalizeConfig {
    pipeline::ExperimentSpec spec;
    int threads = 0;
};

report::Report localize(const LocalizeConfig& config);

struct TinyExactConfig {
    int n = 1;
    int m = 1;
    std::uint64_t seed = 0;
    pipeline::TinyExactOptions options;
    /// Restrict the table to one outcome string ('T'/'S'); empty keeps all.
    std::string outcomes;
};

report::Report tiny_exact(const TinyExactConfig& config);

struct SweepConfig {
    std::vector<int> n_values{4, 8, 16, 32};
    std::vector<double> epsilon_values{0.2, 0.1, 0.05};
    std::int64_t trials = 100;
    std::uint64_t seed = 0;
    int threads = 0;
};

report::Report sweep(const SweepConfig& config);

struct EndToEndConfig {
    int n = 4;
    std::int64_t m = 100;
    std::uint64_t seed = 0;
    pipeline::EndToEndOptions options;
};

report::Report end_to_end(const EndToEndConfig& config);

}  // namespace rqc::exp
