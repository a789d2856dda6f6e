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

// Growing the maximally mixed symmetric state one qubit at a time.
//
// Classical model: from K qubits in the symmetric state, a fresh maximally
// mixed qubit is added and the register is projected onto the symmetric
// subspace (success, K -> K+1) with probability P(K) = (K+2)/(2K+2); a
// singlet outcome discards a pair (K -> K-1). K = 0 is failure (restart),
// K = N is the target.

#include <cstdint>
#include <span>
#include <vector>

#include "rqc/qsim.hpp"
#include "rqc/rational.hpp"
#include "rqc/rng.hpp"

namespace rqc::growth {

Rational triplet_step_probability(int k);
/// Probability of reaching N before 0 from K = 1: (N+1)/(2N).
Rational absorption_probability_formula(int n);
/// Unconditional expected number of steps from K = 1: (N²+3N-4)/6.
Rational expected_steps_formula(int n);

struct WalkSpec {
    int target_n = 1;
    int start_k = 1;
    /// 0 selects the default cap of 10·N² (at least 1).
    std::int64_t max_steps = 0;

    std::int64_t effective_max_steps() const;
    void validate() const;
};

enum class Absorption { Left0, RightN, CapExceeded };

const char* to_string(Absorption a);

struct WalkStep {
    int k_before;
    bool moved_right;
};

struct WalkTrace {
    std::vector<WalkStep> steps;
    Absorption absorbed_at = Absorption::CapExceeded;
    std::int64_t n_steps = 0;
};

/// Per-start-state solution of the first-step equations, indexed by K in
/// [0, N]. The conditional vectors are NaN-free: entries where the
/// conditioning event has probability zero are set to 0.
struct WalkAnalysis {
    int target_n = 0;
    std::vector<Rational> absorb_right_prob;
    std::vector<Rational> expected_steps;
    std::vector<Rational> expected_steps_given_right;
    std::vector<Rational> expected_steps_given_left;

    /// Mean steps summed over attempts (each restarting at K = 1) until the
    /// first success: E[steps per attempt] / P(success per attempt).
    Rational expected_steps_with_restarts() const;
};

WalkAnalysis solve_walk_recurrence(const WalkSpec& spec);

WalkTrace simulate_walk(const WalkSpec& spec, Rng& rng);

struct WalkOutcome {
    Absorption absorbed = Absorption::CapExceeded;
    std::int64_t steps = 0;
};

/// simulate_walk without recording the trajectory; consumes the same draws.
WalkOutcome run_walk(const WalkSpec& spec, Rng& rng);

struct GrowthStats {
    std::int64_t trials = 0;
    std::int64_t right_absorptions = 0;
    std::int64_t left_absorptions = 0;
    std::int64_t cap_exceeded = 0;
    double mean_steps = 0.0;
    double stderr_steps = 0.0;
    std::uint64_t seed = 0;

    double right_fraction() const;
    /// Binomial standard error of right_fraction().
    double right_fraction_stderr() const;
};

struct GrowthRun {
    GrowthStats stats;
    std::vector<WalkOutcome> outcomes;
};

/// Trial i draws from Rng::stream(seed, i); results are bit-identical for
/// any thread count.
GrowthRun monte_carlo_growth(const WalkSpec& spec, std::int64_t trials, std::uint64_t seed, int threads = 0);

GrowthStats summarize(std::span<const WalkOutcome> outcomes, std::uint64_t seed);

struct RestartedGrowth {
    bool succeeded = false;
    std::vector<std::int64_t> steps_per_attempt;
    std::int64_t total_steps = 0;
    /// One qubit to start each attempt plus one per step.
    std::int64_t qubits_consumed = 0;
    int attempts() const { return static_cast<int>(steps_per_attempt.size()); }
};

/// Repeats the walk from K = 1 until it reaches target (or max_attempts).
RestartedGrowth grow_with_restarts(int target_n, Rng& rng, int max_attempts = 10000);

struct QuantumGrowthResult {
    double all_triplet_prob = 0.0;
    double conditional_distance = 0.0;
    int n_measurements = 0;
};

/// ρ^sym_K ⊗ I/2 (fresh qubit is qubit K), n_measurements s/t measurements on
/// uniformly random unordered pairs of the K+1 qubits, all postselected on
/// triplet. Reports the joint probability and the trace distance of the
/// conditional state to ρ^sym_{K+1}.
QuantumGrowthResult quantum_validate_growth(int k, int n_measurements, Rng& rng);
QuantumGrowthResult quantum_validate_growth(int k, std::span<const qsim::QubitPair> schedule);

/// Same process, evaluated at every checkpoint (increasing measurement
/// counts) along a single random pair sequence.
std::vector<QuantumGrowthResult> quantum_growth_profile(int k, std::span<const int> checkpoints, Rng& rng);

/// Forces a singlet between the fresh qubit and a uniformly chosen qubit of
/// ρ^sym_K ⊗ I/2, discards the pair, and returns the trace distance of the
/// remaining K-1 qubits to ρ^sym_{K-1}. Pairs inside the symmetric register
/// have zero singlet probability, so only pairs with the fresh qubit are
/// drawn.
double quantum_validate_singlet_discard(int k, Rng& rng);
double quantum_validate_singlet_discard(int k, qsim::QubitPair pair);

std::vector<qsim::QubitPair> random_pair_schedule(int n_qubits, int length, Rng& rng);

}  // namespace rqc::growth
