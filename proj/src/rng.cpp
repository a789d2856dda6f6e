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


#include "rqc/rng.hpp"

#include <cmath>
#include <numbers>

namespace rqc {

namespace {
std::mt19937_64 seeded(std::uint64_t seed, std::uint64_t index, bool indexed) {
    const auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); };
    const auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
    std::seed_seq seq = indexed ? std::seed_seq{lo(seed), hi(seed), lo(index), hi(index), 0x7c0ffeeu}
                                : std::seed_seq{lo(seed), hi(seed)};
    return std::mt19937_64(seq);
}
}  // namespace

Rng::Rng(std::uint64_t seed) : engine_(seeded(seed, 0, false)) {}

Rng Rng::stream(std::uint64_t seed, std::uint64_t index) {
    Rng r(0);
    r.engine_ = seeded(seed, index, true);
    return r;
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::below(std::uint64_t n) {
    const std::uint64_t limit = max() - (max() % n + 1) % n;
    std::uint64_t v;
    do {
        v = engine_();
    } while (v > limit);
    return v % n;
}

double Rng::normal() {
    // Box-Muller; 1 - u keeps the log argument in (0, 1].
    const double u = 1.0 - uniform();
    const double v = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

}  // namespace rqc
