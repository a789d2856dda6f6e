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

// Minimal property-test driver: a seeded generator and a loop that reports
// the failing case.

#include <cstdint>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "rqc/rng.hpp"

namespace prop {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    std::int64_t integer(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(rng_.below(static_cast<std::uint64_t>(hi - lo + 1)));
    }
    double real(double lo, double hi) { return lo + (hi - lo) * rng_.uniform(); }
    bool coin() { return rng_.below(2) == 1; }
    rqc::Rng& rng() { return rng_; }

private:
    rqc::Rng rng_;
};

/// Runs body(gen, case_index) for `cases` cases, each on its own stream.
template <class Body>
void for_all(int cases, std::uint64_t seed, Body&& body) {
    for (int i = 0; i < cases; ++i) {
        Gen gen(rqc::Rng::stream(seed, static_cast<std::uint64_t>(i))());
        SCOPED_TRACE("property case " + std::to_string(i));
        body(gen, i);
        if (::testing::Test::HasFatalFailure()) return;
    }
}

}  // namespace prop
