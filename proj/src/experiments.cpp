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


#include "rqc/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rqc/error.hpp"
#include "rqc/growth.hpp"
#include "rqc/localization.hpp"

namespace rqc::exp {

using report::Field;
using report::Report;
using report::Value;

namespace {

Value i64(std::int64_t x) { return x; }
Value rat(const Rational& r) { return report::rational_value(r); }

Value u64(std::uint64_t x) {
    if (x > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) return std::to_string(x);
    return static_cast<std::int64_t>(x);
}

}  // namespace

Report walk(const WalkConfig& c) {
    growth::WalkSpec spec{c.target_n, c.start_k, c.max_steps};
    spec.validate();
    if (c.trials < 1) throw DomainError("trials must be >= 1");
    const growth::GrowthRun run = growth::monte_carlo_growth(spec, c.trials, c.seed, c.threads);
    const growth::WalkAnalysis a = growth::solve_walk_recurrence(spec);
    const auto k = static_cast<std::size_t>(c.start_k);
    const auto& s = run.stats;

    Report r;
    r.kind = "walk";
    r.params = {{"target_n", i64(c.target_n)},
                {"start_k", i64(c.start_k)},
                {"max_steps", i64(spec.effective_max_steps())},
                {"trials", i64(c.trials)},
                {"seed", u64(c.seed)}};

    const double p = to_double(a.absorb_right_prob[k]);
    const double e = to_double(a.expected_steps[k]);
    const double z_p = s.right_fraction_stderr() > 0 ? (s.right_fraction() - p) / s.right_fraction_stderr() : 0.0;
    const double z_e = s.stderr_steps > 0 ? (s.mean_steps - e) / s.stderr_steps : 0.0;
    r.summary = {{"absorb_right_formula", rat(growth::absorption_probability_formula(c.target_n))},
                 {"absorb_right_recurrence", rat(a.absorb_right_prob[k])},
                 {"expected_steps_formula", rat(growth::expected_steps_formula(c.target_n))},
                 {"expected_steps_recurrence", rat(a.expected_steps[k])},
                 {"expected_steps_given_right", rat(a.expected_steps_given_right[k])},
                 {"expected_steps_given_left", rat(a.expected_steps_given_left[k])},
                 {"expected_steps_with_restarts", rat(a.expected_steps_with_restarts())},
                 {"right_absorptions", i64(s.right_absorptions)},
                 {"left_absorptions", i64(s.left_absorptions)},
                 {"cap_exceeded", i64(s.cap_exceeded)},
                 {"right_fraction", s.right_fraction()},
                 {"right_fraction_stderr", s.right_fraction_stderr()},
                 {"right_fraction_z", z_p},
                 {"mean_steps", s.mean_steps},
                 {"mean_steps_stderr", s.stderr_steps},
                 {"mean_steps_z", z_e},
                 {"within_4_stderr", std::abs(z_p) <= 4.0 && std::abs(z_e) <= 4.0}};
    if (c.start_k == 1)
        r.summary.push_back({"closed_forms_match_recurrence",
                             a.absorb_right_prob[1] == growth::absorption_probability_formula(c.target_n) &&
                                 a.expected_steps[1] == growth::expected_steps_formula(c.target_n)});

    r.columns = {"trial", "absorbed", "steps"};
    r.rows.reserve(run.outcomes.size());
    for (std::size_t i = 0; i < run.outcomes.size(); ++i)
        r.rows.push_back({i64(static_cast<std::int64_t>(i)), std::string(growth::to_string(run.outcomes[i].absorbed)),
                          i64(run.outcomes[i].steps)});
    return r;
}

Report growth_quantum(const GrowthQuantumConfig& c) {
    if (c.measurements < 1) throw DomainError("measurements must be >= 1");
    if (c.discard_trials < 0) throw DomainError("discard trials must be >= 0");
    qsim::check_register(c.k + 1);
    Rng rng = Rng::stream(c.seed, 0);
    std::vector<int> checkpoints(static_cast<std::size_t>(c.measurements));
    for (int i = 0; i < c.measurements; ++i) checkpoints[i] = i + 1;
    const auto profile = growth::quantum_growth_profile(c.k, checkpoints, rng);
    const Rational target_r = growth::triplet_step_probability(c.k);
    const double target = to_double(target_r);

    Report r;
    r.kind = "growth-quantum";
    r.params = {{"k", i64(c.k)},
                {"measurements", i64(c.measurements)},
                {"seed", u64(c.seed)},
                {"discard_trials", i64(c.discard_trials)}};
    r.columns = {"measurements", "all_triplet_prob", "target", "gap", "distance_to_sym"};

    std::vector<double> xs, ys;
    std::int64_t first_within = -1;
    for (const auto& g : profile) {
        const double gap = std::abs(g.all_triplet_prob - target);
        if (first_within < 0 && gap <= 1e-8) first_within = g.n_measurements;
        r.rows.push_back({i64(g.n_measurements), g.all_triplet_prob, target, gap, g.conditional_distance});
        if (g.conditional_distance > 1e-13) {
            xs.push_back(g.n_measurements);
            ys.push_back(std::log(g.conditional_distance));
        }
    }
    const double rate = xs.size() >= 2 ? pipeline::fit_slope(xs, ys) : -std::numeric_limits<double>::infinity();

    double discard = 0.0;
    if (c.k >= 2) {
        Rng drng = Rng::stream(c.seed, 1);
        for (int i = 0; i < c.discard_trials; ++i)
            discard = std::max(discard, growth::quantum_validate_singlet_discard(c.k, drng));
    }

    const auto& last = profile.back();
    const double gap = std::abs(last.all_triplet_prob - target);
    r.summary = {{"target", rat(target_r)},
                 {"all_triplet_prob", last.all_triplet_prob},
                 {"gap", gap},
                 {"within_1e-8", gap <= 1e-8},
                 {"first_measurement_within_1e-8", i64(first_within)},
                 {"distance_to_sym", last.conditional_distance},
                 {"distance_log_rate", rate},
                 {"singlet_discard_distance", c.k >= 2 ? Value{discard} : Value{}}};
    return r;
}

Report localize(const LocalizeConfig& c) {
    const pipeline::ExperimentReport e = pipeline::run_localization_experiment(c.spec, c.threads);
    Report r;
    r.kind = "localize";
    r.params = {{"n", i64(c.spec.n)}, {"m", i64(c.spec.m)}, {"trials", i64(c.spec.trials)}, {"seed", u64(c.spec.seed)}};
    r.summary = {{"coverage_2sigma", e.coverage_2sigma},
                 {"coverage_3sigma", e.coverage(3.0)},
                 {"coverage_5sigma", e.coverage(5.0)},
                 {"mean_abs_error", e.mean_abs_error},
                 {"mean_ensemble_error_exact", e.mean_ensemble_error_exact},
                 {"bound_value", e.bound_value},
                 {"fraction_n1_above_half", e.fraction_n1_above_half},
                 {"all_n1_above_half", e.all_n1_above_half()},
                 {"bound_dominates", e.bound_dominates()}};
    r.columns = {"trial",      "theta_true", "q_true",    "n1",           "mu",
                 "sigma",      "within_2sigma", "abs_error", "ensemble_error"};
    for (std::size_t i = 0; i < e.trials.size(); ++i) {
        const auto& t = e.trials[i];
        r.rows.push_back({i64(static_cast<std::int64_t>(i)), t.theta_true, t.q_true, i64(t.n1), t.mu, t.sigma,
                          t.within_2sigma, t.abs_error, t.ensemble_error});
    }
    return r;
}

Report tiny_exact(const TinyExactConfig& c) {
    if (!c.outcomes.empty()) {
        if (static_cast<int>(c.outcomes.size()) != c.m)
            throw DomainError("outcome string must have M = " + std::to_string(c.m) + " characters");
        if (c.outcomes.find_first_not_of("TS") != std::string::npos)
            throw DomainError("outcome string may contain only 'T' and 'S'");
    }
    Rng rng = Rng::stream(c.seed, 0);
    const pipeline::TinyExactResult t = pipeline::tiny_exact_localization(c.n, c.m, rng, c.options);

    Report r;
    r.kind = "tiny-exact";
    r.params = {{"n", i64(c.n)},
                {"m", i64(c.m)},
                {"seed", u64(c.seed)},
                {"twirl", t.twirl_description},
                {"twirl_points", i64(t.twirl_points)},
                {"theta_nodes", i64(t.theta_nodes)},
                {"outcomes", c.outcomes}};
    r.columns = {"outcomes", "n1", "probability", "predicted_probability", "distance"};
    double total = 0.0;
    const pipeline::TinyOutcome* chosen = nullptr;
    for (const auto& o : t.outcomes) {
        total += o.probability;
        if (!c.outcomes.empty() && o.outcomes != c.outcomes) continue;
        chosen = &o;
        r.rows.push_back({o.outcomes, i64(o.n1), o.probability, o.predicted_probability, o.distance});
    }
    if (!c.outcomes.empty() && !chosen)
        throw ImpossibleOutcomeError("outcome string " + c.outcomes + " has zero probability");
    r.summary = {{"distance", chosen ? chosen->distance : t.distance},
                 {"max_distance", chosen ? chosen->distance : t.max_distance},
                 {"total_probability", total},
                 {"twirl_standard_error", t.twirl_standard_error}};
    return r;
}

Report sweep(const SweepConfig& c) {
    const pipeline::SweepResult s =
        pipeline::scaling_sweep(c.n_values, c.epsilon_values, c.trials, c.seed, c.threads);
    Report r;
    r.kind = "sweep";
    std::string ns, es;
    for (int n : c.n_values) ns += (ns.empty() ? "" : ",") + std::to_string(n);
    for (double e : c.epsilon_values) es += (es.empty() ? "" : ",") + report::format_double(e);
    r.params = {{"n_values", ns}, {"epsilon_values", es}, {"trials", i64(c.trials)}, {"seed", u64(c.seed)}};
    r.columns = {"n",     "epsilon",         "required_m",        "log_required_m",    "bound",
                 "empirical_error", "coverage_2sigma", "capacity_exceeded", "bound_le_epsilon", "empirical_le_bound"};
    std::int64_t usable = 0, bound_ok = 0, emp_ok = 0;
    for (const auto& row : s.rows) {
        // At M = required_m the bound equals ε up to floating-point rounding.
        const bool b_ok = !row.capacity_exceeded && row.bound <= row.epsilon * (1 + 1e-12);
        const bool e_ok = !row.capacity_exceeded && row.empirical_error <= row.bound;
        if (!row.capacity_exceeded) {
            ++usable;
            bound_ok += b_ok;
            emp_ok += e_ok;
        }
        r.rows.push_back({i64(row.n), row.epsilon, row.capacity_exceeded ? Value{} : i64(row.required_m),
                          row.log_required_m, row.bound, row.empirical_error, row.coverage_2sigma,
                          row.capacity_exceeded, b_ok, e_ok});
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    r.summary = {{"slope_vs_n", s.slope_vs_n},
                 {"slope_vs_n_minus_1", s.slope_vs_n_minus_1},
                 {"slope_vs_inv_epsilon_sq", s.slope_vs_inv_eps_sq},
                 {"slope_vs_inv_epsilon", s.slope_vs_inv_eps},
                 {"rows_within_capacity", i64(usable)},
                 {"all_bounds_le_epsilon", usable > 0 && bound_ok == usable},
                 {"fraction_empirical_le_bound",
                  usable ? static_cast<double>(emp_ok) / static_cast<double>(usable) : nan}};
    return r;
}

Report end_to_end(const EndToEndConfig& c) {
    const pipeline::EndToEndReport e = pipeline::end_to_end(c.n, c.m, c.seed, c.options);
    Report r;
    r.kind = "end-to-end";
    r.params = {{"n", i64(c.n)},
                {"m", i64(c.m)},
                {"seed", u64(c.seed)},
                {"measurements_per_step", i64(e.measurements_per_step)},
                {"target_k", i64(e.target_k)}};
    r.columns = {"component", "attempts", "walk_steps", "qubits", "st_measurements"};
    const auto source_row = [&](const char* name, const growth::RestartedGrowth& g) {
        r.rows.push_back({std::string(name), i64(g.attempts()), i64(g.total_steps), i64(g.qubits_consumed),
                          i64(g.total_steps * e.measurements_per_step)});
    };
    source_row("source_a", e.source_a);
    source_row("source_b", e.source_b);
    r.rows.push_back({std::string("localization"), i64(0), i64(0), i64(0), i64(e.m)});
    r.rows.push_back({std::string("total"), i64(e.source_a.attempts() + e.source_b.attempts()),
                      i64(e.total_walk_steps), i64(e.total_qubits_consumed), i64(e.total_st_measurements)});

    const auto& t = e.localization;
    r.summary = {{"expected_steps_per_attempt", rat(e.expected_steps_per_attempt)},
                 {"success_probability", rat(e.success_probability)},
                 {"expected_total_steps", e.expected_total_steps},
                 {"expected_st_measurements", e.expected_st_measurements},
                 {"total_walk_steps", i64(e.total_walk_steps)},
                 {"total_qubits_consumed", i64(e.total_qubits_consumed)},
                 {"total_st_measurements", i64(e.total_st_measurements)},
                 {"theta_true", t.theta_true},
                 {"q_true", t.q_true},
                 {"n1", i64(t.n1)},
                 {"mu", t.mu},
                 {"sigma", t.sigma},
                 {"within_2sigma", t.within_2sigma},
                 {"ensemble_error", t.ensemble_error},
                 {"bound_value", e.bound_value}};
    return r;
}

}  // namespace rqc::exp
