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

// Relative localization of two symmetric sources from singlet/triplet
// statistics.
//
// Gauge: the first source is |0⟩, the second cos(θ/2)|0⟩ + sin(θ/2)|1⟩ with
// θ ∈ [0, π] drawn from sin(θ)/2. A cross-pair s/t measurement gives triplet
// with probability q = (3 + cos θ)/4, uniform on [1/2, 1] under the prior.
//
// T(a, b) = ∫_{1/2}^{1} q^a (1-q)^b dq carries all of the inference. It is
// exact (big rationals) for a + b <= kExactCap and evaluated in log space
// through the regularized incomplete beta function beyond.

#include <cstdint>

#include "rqc/quadrature.hpp"
#include "rqc/rational.hpp"
#include "rqc/rng.hpp"

namespace rqc::loc {

inline constexpr std::int64_t kExactCap = 2000;

/// Triplet probability q ∈ [1/2, 1].
class OverlapParam {
public:
    explicit OverlapParam(double q);

    double value() const { return q_; }
    double theta() const;

private:
    double q_;
};

OverlapParam q_from_theta(double theta);
double theta_from_q(double q);
/// θ from c = 1 - q = sin²(θ/2)/2, well conditioned near q = 1.
double theta_from_complement(double c);
double complement_from_theta(double theta);

/// Inverse CDF of sin(θ)/2: arccos(1 - 2u).
double theta_from_uniform(double u);
double sample_theta(Rng& rng);

struct TrialCounts {
    std::int64_t m = 0;
    std::int64_t n1 = 0;

    void validate() const;
};

/// n1 ~ Binomial(M, q(θ)). M <= kExactCap uses explicit Bernoulli draws.
TrialCounts simulate_trials(double theta, std::int64_t m, Rng& rng);

/// Exact T(a, b) = a! b! / (a+b+1)! · 2^{-(a+b+1)} · Σ_{j<=a} C(a+b+1, j).
/// Throws CapacityError above kExactCap.
Rational t_integral(std::int64_t a, std::int64_t b);

/// log T(a, b) in floating point for any a, b >= 0.
double log_t_integral(std::int64_t a, std::int64_t b);

/// 1 / (C(a+b, a)·(a+b+1)); requires a > (a+b)/2.
double t_integral_approx(std::int64_t a, std::int64_t b);

/// P(n1 | M) = 2 C(M, n1) T(n1, M - n1).
Rational marginal_pmf(std::int64_t n1, std::int64_t m);

/// Posterior q^{n1} (1-q)^{M-n1} / T(n1, M-n1) on [1/2, 1].
class Posterior {
public:
    Posterior(std::int64_t n1, std::int64_t m);

    std::int64_t n1() const { return n1_; }
    std::int64_t m() const { return m_; }
    double log_normalizer() const { return log_t_; }

    double pdf(double q) const;

    /// Mode of the unnormalized density on [1/2, 1], and 1 - mode.
    double mode() const { return mode_; }
    double mode_complement() const { return mode_complement_; }

    /// log of density(q)/density(mode) at offset x = q - mode. Working in the
    /// offset keeps the O(M) terms exact for very large M.
    double log_relative(double x) const;
    /// [x_lo, x_hi] of offsets outside which the density is below e^{-745}
    /// of its peak.
    std::pair<double, double> support_window() const;

private:
    std::int64_t n1_, m_;
    double log_t_;
    double mode_, mode_complement_;
    double linear_coefficient_ = 0.0;
    // Above kExactCap the density is normalized by quadrature of the
    // mode-relative density; log_zrel_ is the log of that integral.
    bool exact_;
    double log_zrel_ = 0.0;
};

double posterior_pdf(double q, std::int64_t n1, std::int64_t m);

struct ExactMoments {
    Rational mean;
    Rational second_moment;
    Rational variance_central;
};

/// Exact ratios T(n1+1, ·)/T(n1, ·) and T(n1+2, ·)/T(n1, ·); requires
/// M + 2 <= kExactCap.
ExactMoments posterior_moments_exact(std::int64_t n1, std::int64_t m);

/// second_moment_exact is E[q²] (the T(n1+2,·)/T(n1,·) ratio);
/// variance_central is E[q²] - E[q]². The closed-form approximations are
/// the untruncated Beta(n1+1, M-n1+1) mean and variance.
struct PosteriorSummary {
    double mean_exact = 0.0;
    /// 1 - mean_exact, computed without cancellation.
    double mean_complement = 0.5;
    double mean_approx = 0.0;
    double second_moment_exact = 0.0;
    double variance_central = 0.0;
    double variance_approx = 0.0;
    bool exact_arithmetic = true;

    double sigma() const;
};

PosteriorSummary posterior_summary(std::int64_t n1, std::int64_t m);

/// 2 sin(|θ1 - θ2|/2): trace distance of the two pure states.
double trace_distance_q(double q1, double q2);
/// 2 sqrt(8 |q1 - q2|).
double trace_distance_bound(double q1, double q2);
/// ‖ψ^{⊗N} - φ^{⊗N}‖ = 2 sqrt(1 - F^N) for pure states of fidelity F.
double tensor_power_distance(double q1, double q2, int n);
double tensor_power_distance_from_fidelity(double fidelity, int n);

struct EnsembleError {
    double value = 0.0;
    double mu = 0.0;
    quad::QuadratureResult numerator;
    quad::QuadratureResult denominator;
};

/// ∫ Pr(q | n1, M) ‖ |μ⟩⟨μ|^{⊗N} - |q⟩⟨q|^{⊗N} ‖ dq with μ the posterior
/// mean, by adaptive Gauss-Legendre in q split at μ. Absolute accuracy
/// 1e-10; NumericalError on non-convergence.
EnsembleError ensemble_error_detail(std::int64_t n1, std::int64_t m, int n);
/// Reuses an already computed posterior summary for (n1, M).
EnsembleError ensemble_error_detail(std::int64_t n1, std::int64_t m, int n, const PosteriorSummary& summary);
double ensemble_error_exact(std::int64_t n1, std::int64_t m, int n);

/// 2 sqrt(8(N-1)) sqrt(1/h² + h σ) with σ = 1/sqrt(M); h = M^{1/6} gives
/// 2 sqrt(8(N-1)) sqrt(2 / M^{1/3}).
struct ErrorBudget {
    int n = 1;
    std::int64_t m = 1;
    double h = 1.0;
    double bound = 0.0;
};

ErrorBudget error_budget(int n, std::int64_t m);
ErrorBudget error_budget(int n, std::int64_t m, double h);
double ensemble_error_bound(int n, std::int64_t m);

/// Smallest M with ensemble_error_bound(N, M) <= ε. Inverting the bound:
///   2·sqrt(8(N-1))·sqrt(2)·M^{-1/6} <= ε  <=>  M >= (64(N-1)/ε²)³,
/// evaluated exactly in rationals (ε taken as its exact binary value).
/// CapacityError above 2^63 - 1, with log M in the message.
std::int64_t required_m(int n, double epsilon);
/// 3·log(64(N-1)/ε²): the continuous log of the threshold.
double log_required_m(int n, double epsilon);

}  // namespace rqc::loc
