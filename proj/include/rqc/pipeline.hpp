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

// End-to-end experiments built from the growth and localization models.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rqc/growth.hpp"
#include "rqc/localization.hpp"
#include "rqc/qsim.hpp"
#include "rqc/rational.hpp"
#include "rqc/rng.hpp"

namespace rqc::pipeline {

struct ExperimentSpec {
    int n = 1;             // computation qubits kept per source
    std::int64_t m = 1;    // cross-pair measurements
    std::int64_t trials = 1;
    std::uint64_t seed = 0;

    void validate() const;
};

struct TrialRecord {
    double theta_true = 0.0;
    double q_true = 0.0;
    std::int64_t n1 = 0;
    double mu = 0.0;
    double sigma = 0.0;
    bool within_2sigma = false;
    double abs_error = 0.0;
    double ensemble_error = 0.0;
};

struct ExperimentReport {
    ExperimentSpec spec;
    std::vector<TrialRecord> trials;
    double coverage_2sigma = 0.0;
    double mean_abs_error = 0.0;
    double mean_ensemble_error_exact = 0.0;
    double bound_value = 0.0;
    double fraction_n1_above_half = 0.0;

    /// Fraction of trials with |μ - q_true| <= k σ.
    double coverage(double k) const;
    bool all_n1_above_half() const { return fraction_n1_above_half == 1.0; }
    /// mean_ensemble_error_exact <= bound_value; vacuous unless every trial
    /// had n1 > M/2.
    bool bound_dominates() const;
};

/// Trial i uses Rng::stream(spec.seed, i): sample θ from sin(θ)/2, draw M
/// s/t outcomes, summarize the posterior, and evaluate the ensemble error.
ExperimentReport run_localization_experiment(const ExperimentSpec& spec, int threads = 0);

enum class TwirlMethod { EulerCubature, HaarMonteCarlo };

struct TinyExactOptions {
    TwirlMethod twirl = TwirlMethod::EulerCubature;
    /// Gauss-Legendre nodes for the θ average of the prediction.
    int theta_nodes = 96;
    /// Samples for the Haar Monte Carlo twirl.
    int haar_samples = 10000;
};

struct TinyOutcome {
    std::string outcomes;  // 'T'/'S' per cross pair, pair 0 first
    int n1 = 0;
    double probability = 0.0;
    /// 2 T(n1, M - n1): the probability of this particular string under the
    /// uniform-q model.
    double predicted_probability = 0.0;
    double distance = 0.0;
    qsim::DensityOperator simulated;
    qsim::DensityOperator predicted;
};

struct TinyExactResult {
    int n = 0;
    int m = 0;
    std::vector<TinyOutcome> outcomes;
    /// Probability-weighted mean and maximum of the per-outcome distances.
    double distance = 0.0;
    double max_distance = 0.0;
    std::string twirl_description;
    int theta_nodes = 0;
    int twirl_points = 0;
    /// Largest entrywise standard error of the twirl (0 for cubature).
    double twirl_standard_error = 0.0;
};

/// Exact density-matrix run of the localization round: ρ^sym_{N+M} ⊗
/// ρ^sym_{N+M} (source A on the low qubits), s/t measurements on the cross
/// pairs (A_{N+i}, B_{N+i}), every outcome string enumerated, measured
/// qubits traced out. Each conditional state is compared with the Bayesian
/// prediction ∫ dq Pr(q|n1, M) Twirl[|0⟩⟨0|^{⊗N} ⊗ |q⟩⟨q|^{⊗N}].
TinyExactResult tiny_exact_localization(int n, int m, Rng& rng, const TinyExactOptions& options = {});

/// The predicted conditional state on 2N qubits for n1 triplets out of M.
qsim::DensityOperator predicted_localized_state(int n, int n1, int m, Rng& rng, const TinyExactOptions& options,
                                                double* standard_error = nullptr);

/// Collective twirl ∫ dU U^{⊗k} ρ U^{†⊗k} by Euler-angle cubature. The
/// rule is exact for the polynomial degrees that occur on k qubits.
qsim::Matrix twirl_exact(const qsim::Matrix& rho, int n_qubits, int* points = nullptr);
qsim::Matrix twirl_monte_carlo(const qsim::Matrix& rho, int n_qubits, int samples, Rng& rng,
                               double* standard_error = nullptr);

struct SweepRow {
    int n = 0;
    double epsilon = 0.0;
    std::int64_t required_m = -1;  // -1 when over capacity
    double log_required_m = 0.0;
    double bound = 0.0;
    double empirical_error = 0.0;
    double coverage_2sigma = 0.0;
    bool capacity_exceeded = false;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    /// Mean over ε groups of the least-squares slope of log M vs log N,
    /// and vs log(N - 1).
    double slope_vs_n = 0.0;
    double slope_vs_n_minus_1 = 0.0;
    /// Mean over N groups of the slope of log M vs log(1/ε²) and log(1/ε).
    double slope_vs_inv_eps_sq = 0.0;
    double slope_vs_inv_eps = 0.0;
    std::int64_t trials = 0;
};

SweepResult scaling_sweep(std::span<const int> n_values, std::span<const double> epsilon_values, std::int64_t trials,
                          std::uint64_t seed, int threads = 0);

/// Least-squares slope of y against x.
double fit_slope(std::span<const double> x, std::span<const double> y);

struct EndToEndOptions {
    /// s/t measurements charged to each walk step.
    int measurements_per_step = 30;
};

struct EndToEndReport {
    int n = 0;
    std::int64_t m = 0;
    std::uint64_t seed = 0;
    int measurements_per_step = 0;
    int target_k = 0;

    growth::RestartedGrowth source_a;
    growth::RestartedGrowth source_b;
    std::int64_t total_walk_steps = 0;
    std::int64_t total_qubits_consumed = 0;
    std::int64_t total_st_measurements = 0;

    TrialRecord localization;
    double bound_value = 0.0;

    Rational expected_steps_per_attempt;
    Rational success_probability;
    /// 2 · E[steps]/P(success) · measurements_per_step + M.
    double expected_st_measurements = 0.0;
    double expected_total_steps = 0.0;
};

/// Grows two sources to K = N + M with the walk model (restarting on
/// failure; streams (seed, 0) and (seed, 1)), then runs one localization
/// round on stream (seed, 2).
EndToEndReport end_to_end(int n, std::int64_t m, std::uint64_t seed, const EndToEndOptions& options = {});

}  // namespace rqc::pipeline
