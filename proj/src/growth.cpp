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


#include "rqc/growth.hpp"

#include <cmath>
#include <string>

#include "rqc/error.hpp"
#include "rqc/parallel.hpp"

namespace rqc::growth {

namespace {

// Solves x_K = d_K + P(K) x_{K+1} + (1 - P(K)) x_{K-1} for K in (0, N), with
// x_0 = x_N = 0, by exact tridiagonal elimination.
std::vector<Rational> solve_first_step(int n, const std::vector<Rational>& rhs, const Rational& left,
                                       const Rational& right) {
    std::vector<Rational> x(static_cast<std::size_t>(n) + 1);
    x[0] = left;
    x[n] = right;
    if (n < 2) return x;
    std::vector<Rational> cp(n), dp(n);
    for (int k = 1; k < n; ++k) {
        const Rational p = triplet_step_probability(k);
        const Rational sub = p - 1;  // coefficient of x_{K-1}
        const Rational sup = -p;     // coefficient of x_{K+1}
        Rational pivot = 1;
        Rational d = rhs[k];
        if (k == 1) {
            d -= sub * left;
        } else {
            pivot -= sub * cp[k - 1];
            d -= sub * dp[k - 1];
        }
        cp[k] = sup / pivot;
        dp[k] = d / pivot;
    }
    for (int k = n - 1; k >= 1; --k) x[k] = dp[k] - cp[k] * x[k + 1];
    return x;
}

void require_positive(int v, const char* what) {
    if (v < 1) throw DomainError(std::string(what) + " must be >= 1, got " + std::to_string(v));
}

}  // namespace

Rational triplet_step_probability(int k) {
    require_positive(k, "K");
    return make_rational(k + 2, 2 * static_cast<std::int64_t>(k) + 2);
}

Rational absorption_probability_formula(int n) {
    require_positive(n, "N");
    return make_rational(n + 1, 2 * static_cast<std::int64_t>(n));
}

Rational expected_steps_formula(int n) {
    require_positive(n, "N");
    const std::int64_t nn = n;
    return make_rational(nn * nn + 3 * nn - 4, 6);
}

std::int64_t WalkSpec::effective_max_steps() const {
    if (max_steps > 0) return max_steps;
    return std::max<std::int64_t>(1, 10 * static_cast<std::int64_t>(target_n) * target_n);
}

void WalkSpec::validate() const {
    require_positive(target_n, "target N");
    if (start_k < 1 || start_k > target_n)
        throw DomainError("start K must lie in [1, N], got " + std::to_string(start_k));
    if (max_steps < 0) throw DomainError("max_steps must be non-negative");
}

const char* to_string(Absorption a) {
    switch (a) {
        case Absorption::Left0: return "left0";
        case Absorption::RightN: return "rightN";
        case Absorption::CapExceeded: return "cap";
    }
    return "?";
}

Rational WalkAnalysis::expected_steps_with_restarts() const {
    if (target_n == 1) return Rational(0);
    return expected_steps[1] / absorb_right_prob[1];
}

WalkAnalysis solve_walk_recurrence(const WalkSpec& spec) {
    spec.validate();
    const int n = spec.target_n;
    const std::vector<Rational> zeros(static_cast<std::size_t>(n) + 1, Rational(0));
    const std::vector<Rational> ones(static_cast<std::size_t>(n) + 1, Rational(1));

    WalkAnalysis out;
    out.target_n = n;
    out.absorb_right_prob = solve_first_step(n, zeros, Rational(0), Rational(1));
    out.expected_steps = solve_first_step(n, ones, Rational(0), Rational(0));

    // E[T·1{right}] and E[T·1{left}] obey the same equations with the
    // absorption probabilities as the source term.
    std::vector<Rational> left_prob(out.absorb_right_prob.size());
    for (std::size_t k = 0; k < left_prob.size(); ++k) left_prob[k] = 1 - out.absorb_right_prob[k];
    const auto w_right = solve_first_step(n, out.absorb_right_prob, Rational(0), Rational(0));
    const auto w_left = solve_first_step(n, left_prob, Rational(0), Rational(0));
    out.expected_steps_given_right.assign(out.absorb_right_prob.size(), Rational(0));
    out.expected_steps_given_left.assign(out.absorb_right_prob.size(), Rational(0));
    for (int k = 1; k < n; ++k) {
        out.expected_steps_given_right[k] = w_right[k] / out.absorb_right_prob[k];
        out.expected_steps_given_left[k] = w_left[k] / left_prob[k];
    }
    return out;
}

namespace {

template <class OnStep>
WalkOutcome walk_impl(const WalkSpec& spec, Rng& rng, OnStep&& on_step) {
    spec.validate();
    const std::int64_t cap = spec.effective_max_steps();
    int k = spec.start_k;
    WalkOutcome out;
    if (k == spec.target_n) {
        out.absorbed = Absorption::RightN;
        return out;
    }
    while (out.steps < cap) {
        const double p = static_cast<double>(k + 2) / static_cast<double>(2 * k + 2);
        const bool right = rng.uniform() < p;
        on_step(WalkStep{k, right});
        k += right ? 1 : -1;
        ++out.steps;
        if (k == 0) {
            out.absorbed = Absorption::Left0;
            return out;
        }
        if (k == spec.target_n) {
            out.absorbed = Absorption::RightN;
            return out;
        }
    }
    out.absorbed = Absorption::CapExceeded;
    return out;
}

}  // namespace

WalkTrace simulate_walk(const WalkSpec& spec, Rng& rng) {
    WalkTrace trace;
    const WalkOutcome o = walk_impl(spec, rng, [&](const WalkStep& s) { trace.steps.push_back(s); });
    trace.absorbed_at = o.absorbed;
    trace.n_steps = o.steps;
    return trace;
}

WalkOutcome run_walk(const WalkSpec& spec, Rng& rng) {
    return walk_impl(spec, rng, [](const WalkStep&) {});
}

double GrowthStats::right_fraction() const {
    return trials == 0 ? 0.0 : static_cast<double>(right_absorptions) / static_cast<double>(trials);
}

double GrowthStats::right_fraction_stderr() const {
    if (trials == 0) return 0.0;
    const double p = right_fraction();
    return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

GrowthStats summarize(std::span<const WalkOutcome> outcomes, std::uint64_t seed) {
    GrowthStats s;
    s.seed = seed;
    double mean = 0.0, m2 = 0.0;
    for (const WalkOutcome& o : outcomes) {
        ++s.trials;
        switch (o.absorbed) {
            case Absorption::RightN: ++s.right_absorptions; break;
            case Absorption::Left0: ++s.left_absorptions; break;
            case Absorption::CapExceeded: ++s.cap_exceeded; break;
        }
        const double x = static_cast<double>(o.steps);
        const double delta = x - mean;
        mean += delta / static_cast<double>(s.trials);
        m2 += delta * (x - mean);
    }
    s.mean_steps = mean;
    if (s.trials > 1) s.stderr_steps = std::sqrt(m2 / static_cast<double>(s.trials - 1) / static_cast<double>(s.trials));
    return s;
}

GrowthRun monte_carlo_growth(const WalkSpec& spec, std::int64_t trials, std::uint64_t seed, int threads) {
    spec.validate();
    if (trials < 1) throw DomainError("trials must be >= 1");
    GrowthRun run;
    run.outcomes.resize(static_cast<std::size_t>(trials));
    parallel_for(run.outcomes.size(), threads, [&](std::size_t i) {
        Rng rng = Rng::stream(seed, i);
        run.outcomes[i] = run_walk(spec, rng);
    });
    run.stats = summarize(run.outcomes, seed);
    return run;
}

RestartedGrowth grow_with_restarts(int target_n, Rng& rng, int max_attempts) {
    WalkSpec spec{target_n, 1, 0};
    spec.validate();
    RestartedGrowth g;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        const WalkOutcome o = run_walk(spec, rng);
        g.steps_per_attempt.push_back(o.steps);
        g.total_steps += o.steps;
        g.qubits_consumed += 1 + o.steps;
        if (o.absorbed == Absorption::RightN) {
            g.succeeded = true;
            break;
        }
    }
    return g;
}

std::vector<qsim::QubitPair> random_pair_schedule(int n_qubits, int length, Rng& rng) {
    if (n_qubits < 2) throw DomainError("random pairs need at least two qubits");
    std::vector<qsim::QubitPair> pairs;
    pairs.reserve(static_cast<std::size_t>(std::max(length, 0)));
    for (int i = 0; i < length; ++i) {
        int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(n_qubits)));
        int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(n_qubits - 1)));
        if (b >= a) ++b;
        pairs.push_back({std::min(a, b), std::max(a, b)});
    }
    return pairs;
}

namespace {

qsim::DensityOperator grown_input(int k) {
    require_positive(k, "K");
    qsim::check_register(k + 1);
    return qsim::rho_sym(k).tensor(qsim::DensityOperator::maximally_mixed(1));
}

QuantumGrowthResult conditional_result(const qsim::Matrix& unnormalized, int n_qubits, const qsim::DensityOperator& target,
                                       int measurements) {
    const double p = unnormalized.trace().real();
    if (p < qsim::kImpossibleProbability) throw ImpossibleOutcomeError("all-triplet sequence has vanishing probability");
    qsim::DensityOperator conditional(n_qubits, unnormalized / p);
    return {p, qsim::trace_distance(conditional, target), measurements};
}

}  // namespace

QuantumGrowthResult quantum_validate_growth(int k, std::span<const qsim::QubitPair> schedule) {
    const qsim::DensityOperator start = grown_input(k);
    const int n = k + 1;
    qsim::Matrix rho = start.matrix();
    for (const auto& pair : schedule) qsim::project_pair_in_place(rho, n, pair, qsim::Outcome::Triplet);
    return conditional_result(rho, n, qsim::rho_sym(n), static_cast<int>(schedule.size()));
}

QuantumGrowthResult quantum_validate_growth(int k, int n_measurements, Rng& rng) {
    if (n_measurements < 0) throw DomainError("measurement count must be non-negative");
    qsim::check_register(k + 1);
    const auto schedule = random_pair_schedule(k + 1, n_measurements, rng);
    return quantum_validate_growth(k, schedule);
}

std::vector<QuantumGrowthResult> quantum_growth_profile(int k, std::span<const int> checkpoints, Rng& rng) {
    const qsim::DensityOperator start = grown_input(k);
    const int n = k + 1;
    int last = 0;
    for (int c : checkpoints) {
        if (c < last) throw DomainError("checkpoints must be non-decreasing and non-negative");
        last = c;
    }
    const auto schedule = random_pair_schedule(n, last, rng);
    const qsim::DensityOperator target = qsim::rho_sym(n);
    std::vector<QuantumGrowthResult> out;
    qsim::Matrix rho = start.matrix();
    int applied = 0;
    for (int c : checkpoints) {
        for (; applied < c; ++applied) qsim::project_pair_in_place(rho, n, schedule[applied], qsim::Outcome::Triplet);
        out.push_back(conditional_result(rho, n, target, c));
    }
    return out;
}

double quantum_validate_singlet_discard(int k, qsim::QubitPair pair) {
    if (k < 2) throw DomainError("singlet discard needs K >= 2");
    const qsim::DensityOperator start = grown_input(k);
    Rng unused(0);
    const auto result = qsim::measure_st(start, pair, qsim::Outcome::Singlet, unused);
    const int discard[2] = {pair.first, pair.second};
    const qsim::DensityOperator rest = qsim::partial_trace_discard(result.post_state, discard);
    return qsim::trace_distance(rest, qsim::rho_sym(k - 1));
}

double quantum_validate_singlet_discard(int k, Rng& rng) {
    if (k < 2) throw DomainError("singlet discard needs K >= 2");
    qsim::check_register(k + 1);
    const int partner = static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));
    return quantum_validate_singlet_discard(k, qsim::QubitPair{partner, k});
}

}  // namespace rqc::growth
