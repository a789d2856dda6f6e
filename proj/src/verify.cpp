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


#include "rqc/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "rqc/growth.hpp"
#include "rqc/localization.hpp"
#include "rqc/pipeline.hpp"
#include "rqc/qsim.hpp"
#include "rqc/quadrature.hpp"

namespace rqc::verify {

namespace {

struct Outcome {
    bool passed;
    std::string detail;
};

using Check = std::function<Outcome()>;

std::string fmt(double x) {
    std::ostringstream s;
    s.precision(3);
    s << x;
    return s.str();
}

CheckResult run_check(const std::string& module, const std::string& name, const Check& check) {
    CheckResult r{module, name, false, "", 0.0};
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const Outcome o = check();
        r.passed = o.passed;
        r.detail = o.detail;
    } catch (const std::exception& e) {
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

// qsim ----------------------------------------------------------------------

Outcome density_invariants() {
    double worst = 0.0;
    for (int n = 1; n <= 8; ++n) {
        const auto rho = qsim::rho_sym(n);
        rho.check_invariants();
        if (n < 2) continue;
        const auto grown = rho.tensor(qsim::DensityOperator::maximally_mixed(1));
        for (int a = 0; a <= n; ++a)
            for (int b = a + 1; b <= n; ++b) {
                const double s = qsim::outcome_probability(grown, {a, b}, qsim::Outcome::Singlet) +
                                 qsim::outcome_probability(grown, {a, b}, qsim::Outcome::Triplet);
                worst = std::max(worst, std::abs(s - 1.0));
            }
    }
    return {worst <= 1e-12, "max |p_s + p_t - 1| = " + fmt(worst)};
}

Outcome projector_commutes_with_swaps() {
    double worst = 0.0;
    for (int n = 2; n <= 6; ++n) {
        const auto p = qsim::symmetric_projector(n).matrix();
        for (int a = 0; a + 1 < n; ++a) {
            const auto s = qsim::swap_operator(a, a + 1, n);
            worst = std::max(worst, (p * s - s * p).cwiseAbs().maxCoeff());
        }
    }
    return {worst <= 1e-12, "max |[P_sym, SWAP]| = " + fmt(worst)};
}

Outcome rho_sym_rotation_invariant(std::uint64_t seed) {
    Rng rng = Rng::stream(seed, 11);
    double worst = 0.0;
    for (int n = 1; n <= 5; ++n) {
        const auto rho = qsim::rho_sym(n);
        for (int i = 0; i < 20; ++i) {
            const auto u = qsim::haar_random_unitary(rng);
            const qsim::DensityOperator rotated(n, qsim::apply_collective_unitary(rho.matrix(), n, u));
            worst = std::max(worst, qsim::trace_distance(rho, rotated));
        }
    }
    return {worst < 1e-10, "max distance = " + fmt(worst)};
}

Outcome pure_state_distance() {
    double worst = 0.0;
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) {
            const double t1 = std::numbers::pi * i / 9.0, t2 = std::numbers::pi * j / 9.0;
            const double d = qsim::trace_distance(qsim::pure_qubit(t1).density(), qsim::pure_qubit(t2).density());
            worst = std::max(worst, std::abs(d - 2.0 * std::sin(std::abs(t1 - t2) / 2.0)));
        }
    return {worst <= 1e-10, "max deviation = " + fmt(worst)};
}

// growth --------------------------------------------------------------------

Outcome walk_closed_forms() {
    for (int n = 1; n <= 200; ++n) {
        const auto a = growth::solve_walk_recurrence({n});
        if (a.absorb_right_prob[1] != growth::absorption_probability_formula(n))
            return {false, "absorption mismatch at N=" + std::to_string(n)};
        if (a.expected_steps[1] != growth::expected_steps_formula(n))
            return {false, "expected steps mismatch at N=" + std::to_string(n)};
    }
    return {true, "N = 1..200 exact"};
}

Outcome absorption_monotone() {
    for (int n = 1; n <= 200; ++n) {
        const auto a = growth::solve_walk_recurrence({n});
        for (std::size_t k = 1; k < a.absorb_right_prob.size(); ++k)
            if (a.absorb_right_prob[k] < a.absorb_right_prob[k - 1])
                return {false, "decrease at N=" + std::to_string(n) + ", K=" + std::to_string(k)};
    }
    return {true, "N = 1..200"};
}

Outcome walk_monte_carlo(std::uint64_t seed, int threads) {
    double worst = 0.0;
    for (int n : {5, 10, 20, 50}) {
        const auto run = growth::monte_carlo_growth({n}, 100000, seed + static_cast<std::uint64_t>(n), threads);
        const auto& s = run.stats;
        const double zp =
            (s.right_fraction() - to_double(growth::absorption_probability_formula(n))) / s.right_fraction_stderr();
        const double ze = (s.mean_steps - to_double(growth::expected_steps_formula(n))) / s.stderr_steps;
        worst = std::max({worst, std::abs(zp), std::abs(ze)});
    }
    return {worst <= 4.0, "max |z| = " + fmt(worst)};
}

Outcome quantum_distance_nonincreasing(std::uint64_t seed) {
    constexpr int k = 3, sequences = 8, length = 20;
    std::vector<int> checkpoints(length);
    for (int i = 0; i < length; ++i) checkpoints[i] = i + 1;
    std::vector<double> mean(length, 0.0);
    for (int s = 0; s < sequences; ++s) {
        Rng rng = Rng::stream(seed, 100 + static_cast<std::uint64_t>(s));
        const auto profile = growth::quantum_growth_profile(k, checkpoints, rng);
        for (int i = 0; i < length; ++i) mean[i] += profile[i].conditional_distance / sequences;
    }
    for (int i = 1; i < length; ++i)
        if (mean[i] > mean[i - 1] + 1e-12)
            return {false, "mean distance rises at m=" + std::to_string(i + 1)};
    return {true, "K=3, m=1.." + std::to_string(length) + ", final mean " + fmt(mean.back())};
}

Outcome singlet_discard(std::uint64_t seed) {
    Rng rng = Rng::stream(seed, 12);
    double worst = 0.0;
    for (int k = 2; k <= 4; ++k)
        for (int i = 0; i < 4; ++i) worst = std::max(worst, growth::quantum_validate_singlet_discard(k, rng));
    return {worst < 1e-10, "max distance = " + fmt(worst)};
}

// localization --------------------------------------------------------------

Outcome marginal_normalization() {
    for (int m = 0; m <= 50; ++m) {
        Rational s = 0;
        for (int n1 = 0; n1 <= m; ++n1) s += loc::marginal_pmf(n1, m);
        if (s != 1) return {false, "sum = " + to_string(s) + " at M=" + std::to_string(m)};
    }
    return {true, "M = 0..50 exact"};
}

Outcome posterior_normalized(std::uint64_t seed) {
    Rng rng = Rng::stream(seed, 13);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const auto m = static_cast<std::int64_t>(1 + rng.below(500));
        const auto n1 = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(m) + 1));
        const loc::Posterior post(n1, m);
        quad::QuadratureOptions opt;
        opt.abs_tol = 1e-12;
        std::vector<double> breaks{0.5, 1.0};
        if (post.mode() > 0.5 && post.mode() < 1.0) breaks.insert(breaks.begin() + 1, post.mode());
        const auto r = quad::integrate([&](double q) { return post.pdf(q); }, breaks, opt);
        worst = std::max(worst, std::abs(r.value - 1.0));
    }
    return {worst <= 1e-10, "max |∫pdf - 1| = " + fmt(worst)};
}

Outcome moment_identity_and_variance() {
    for (std::int64_t m = 1; m <= 200; ++m) {
        const Rational inv_m = make_rational(1, m);
        for (std::int64_t n1 = 0; n1 <= m; ++n1) {
            const auto e = loc::posterior_moments_exact(n1, m);
            if (e.mean * loc::t_integral(n1, m - n1) != loc::t_integral(n1 + 1, m - n1))
                return {false, "moment identity fails at (" + std::to_string(n1) + ", " + std::to_string(m) + ")"};
            if (!(e.variance_central < inv_m))
                return {false, "variance >= 1/M at (" + std::to_string(n1) + ", " + std::to_string(m) + ")"};
        }
    }
    return {true, "all n1 <= M <= 200 exact"};
}

Outcome exponential_closeness() {
    std::vector<double> xs, ys;
    for (std::int64_t m = 20; m <= 200; m += 20) {
        const std::int64_t n1 = (3 * m + 3) / 4;
        const Rational diff = loc::marginal_pmf(n1, m) - make_rational(2, m + 1);
        xs.push_back(static_cast<double>(m));
        ys.push_back(log_abs(diff));
    }
    const double slope = pipeline::fit_slope(xs, ys);
    return {slope < -0.05, "fitted log slope = " + fmt(slope)};
}

Outcome crossover_consistency() {
    double worst = 0.0;
    for (std::int64_t a : {1000, 1200, 1500, 1990}) {
        const std::int64_t b = loc::kExactCap - a;
        worst = std::max(worst, std::abs(loc::log_t_integral(a, b) - log_abs(loc::t_integral(a, b))));
    }
    return {worst <= 1e-12, "max |Δ log T| at a+b = " + std::to_string(loc::kExactCap) + ": " + fmt(worst)};
}

Outcome distance_dominance() {
    int violations = 0;
    for (int i = 0; i < 200; ++i)
        for (int j = 0; j < 200; ++j) {
            const double q1 = 0.5 + 0.5 * i / 199.0, q2 = 0.5 + 0.5 * j / 199.0;
            if (loc::trace_distance_bound(q1, q2) < loc::trace_distance_q(q1, q2)) ++violations;
        }
    return {violations == 0, std::to_string(violations) + " violations on 200x200"};
}

Outcome chain_dominance() {
    double worst_ratio = 0.0;
    for (std::int64_t m : {64, 512, 4096})
        for (int n : {2, 8, 32})
            for (std::int64_t n1 : {m / 2 + 1, (3 * m + 3) / 4, m}) {
                const double e = loc::ensemble_error_exact(n1, m, n);
                const double b = loc::ensemble_error_bound(n, m);
                worst_ratio = std::max(worst_ratio, e / b);
            }
    return {worst_ratio <= 1.0, "max exact/bound = " + fmt(worst_ratio)};
}

Outcome statistical_soundness(std::uint64_t seed, int threads) {
    const auto r = pipeline::run_localization_experiment({2, 500, 10000, seed}, threads);
    const double c2 = r.coverage(2), c3 = r.coverage(3), c5 = r.coverage(5);
    const bool ok = c2 >= 1 - 1 / 4.0 && c3 >= 1 - 1 / 9.0 && c5 >= 1 - 1 / 25.0;
    return {ok, "coverage k=2,3,5: " + fmt(c2) + ", " + fmt(c3) + ", " + fmt(c5)};
}

// pipeline ------------------------------------------------------------------

Outcome tiny_exact_trivial(std::uint64_t seed) {
    double worst = 0.0;
    for (int n = 1; n <= 2; ++n) {
        Rng rng = Rng::stream(seed, 14);
        worst = std::max(worst, pipeline::tiny_exact_localization(n, 0, rng).distance);
    }
    return {worst <= 1e-8, "M=0 distance = " + fmt(worst)};
}

Outcome tiny_exact_reproducible(std::uint64_t seed) {
    Rng a = Rng::stream(seed, 15), b = Rng::stream(seed, 15);
    const auto x = pipeline::tiny_exact_localization(1, 2, a);
    const auto y = pipeline::tiny_exact_localization(1, 2, b);
    const bool ok = std::isfinite(x.distance) && x.distance == y.distance && x.outcomes.size() == y.outcomes.size();
    return {ok, "N=1, M=2 distance " + fmt(x.distance)};
}

Outcome experiment_deterministic(std::uint64_t seed) {
    const pipeline::ExperimentSpec spec{3, 300, 64, seed};
    const auto a = pipeline::run_localization_experiment(spec, 1);
    const auto b = pipeline::run_localization_experiment(spec, 4);
    for (std::size_t i = 0; i < a.trials.size(); ++i) {
        const auto &x = a.trials[i], &y = b.trials[i];
        if (x.n1 != y.n1 || x.mu != y.mu || x.ensemble_error != y.ensemble_error || x.theta_true != y.theta_true)
            return {false, "trial " + std::to_string(i) + " differs between 1 and 4 threads"};
    }
    return {a.mean_ensemble_error_exact == b.mean_ensemble_error_exact, "1 vs 4 threads identical"};
}

Outcome report_bound_dominance(std::uint64_t seed, int threads) {
    int checked = 0;
    for (std::int64_t m : {200, 1000, 5000}) {
        const auto r = pipeline::run_localization_experiment({4, m, 200, seed}, threads);
        if (!r.all_n1_above_half()) continue;
        ++checked;
        if (!r.bound_dominates()) return {false, "bound exceeded at M=" + std::to_string(m)};
    }
    return {true, std::to_string(checked) + " reports met the n1 > M/2 precondition"};
}

// report --------------------------------------------------------------------

Outcome report_round_trip() {
    report::Report r;
    r.kind = "check";
    r.params = {{"seed", std::int64_t{7}}, {"label", std::string("a,\"b\"")}};
    r.summary = {{"ratio", report::rational_value(make_rational(3, 4))}, {"x", 0.1}, {"nan", std::nan("")}};
    r.columns = {"a", "b"};
    r.add_row({std::int64_t{1}, 2.5});
    r.add_row({true, std::monostate{}});
    const auto back = report::from_json(report::to_json(r));
    // NaN never compares equal; compare the rest field by field.
    const bool ok = back.kind == r.kind && back.params == r.params && back.rows == r.rows &&
                    back.summary[0] == r.summary[0] && back.summary[1] == r.summary[1] &&
                    std::isnan(std::get<double>(back.summary[2].value));
    report::Report empty;
    empty.columns = {"trial", "absorbed", "steps"};
    const bool header_only = report::to_csv(empty) == "trial,absorbed,steps\n";
    return {ok && header_only, ok ? (header_only ? "json round trip, header-only csv" : "empty csv wrong")
                                  : "json round trip differs"};
}

}  // namespace

std::vector<CheckResult> run_all(const VerifyOptions& o) {
    const auto s = o.seed;
    const int t = o.threads;
    std::vector<CheckResult> out;
    out.push_back(run_check("qsim", "density invariants and s/t probabilities", density_invariants));
    out.push_back(run_check("qsim", "symmetric projector commutes with swaps", projector_commutes_with_swaps));
    out.push_back(run_check("qsim", "rho_sym rotation invariant", [&] { return rho_sym_rotation_invariant(s); }));
    out.push_back(run_check("qsim", "pure-state trace distance", pure_state_distance));
    out.push_back(run_check("growth", "closed forms match recurrence", walk_closed_forms));
    out.push_back(run_check("growth", "absorption monotone in K", absorption_monotone));
    out.push_back(run_check("growth", "Monte Carlo within 4 stderr", [&] { return walk_monte_carlo(s, t); }));
    out.push_back(run_check("growth", "conditional distance nonincreasing",
                            [&] { return quantum_distance_nonincreasing(s); }));
    out.push_back(run_check("growth", "singlet discard leaves rho_sym", [&] { return singlet_discard(s); }));
    out.push_back(run_check("localization", "marginal normalization", marginal_normalization));
    out.push_back(run_check("localization", "posterior normalization", [&] { return posterior_normalized(s); }));
    out.push_back(run_check("localization", "moment identity and variance bound", moment_identity_and_variance));
    out.push_back(run_check("localization", "exponential closeness", exponential_closeness));
    out.push_back(run_check("localization", "exact/float crossover", crossover_consistency));
    out.push_back(run_check("localization", "distance bound dominance", distance_dominance));
    out.push_back(run_check("localization", "chain dominance", chain_dominance));
    out.push_back(run_check("localization", "statistical soundness", [&] { return statistical_soundness(s, t); }));
    out.push_back(run_check("pipeline", "tiny exact M=0", [&] { return tiny_exact_trivial(s); }));
    out.push_back(run_check("pipeline", "tiny exact reproducible", [&] { return tiny_exact_reproducible(s); }));
    out.push_back(run_check("pipeline", "thread-count determinism", [&] { return experiment_deterministic(s); }));
    out.push_back(run_check("pipeline", "report bound dominance", [&] { return report_bound_dominance(s, t); }));
    out.push_back(run_check("report", "serialization", report_round_trip));
    return out;
}

bool all_passed(const std::vector<CheckResult>& checks) {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

report::Report to_report(const std::vector<CheckResult>& checks, const VerifyOptions& options) {
    report::Report r;
    r.kind = "verify";
    r.params = {{"seed", static_cast<std::int64_t>(options.seed)}};
    r.columns = {"module", "check", "passed", "detail"};
    std::int64_t failed = 0;
    for (const auto& c : checks) {
        failed += !c.passed;
        r.rows.push_back({c.module, c.name, c.passed, c.detail});
    }
    r.summary = {{"checks", static_cast<std::int64_t>(checks.size())}, {"failed", failed}, {"all_passed", failed == 0}};
    return r;
}

}  // namespace rqc::verify
