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


#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <boost/random/beta_distribution.hpp>
#include <gtest/gtest.h>

#include "property.hpp"
#include "rqc/error.hpp"
#include "rqc/localization.hpp"
#include "rqc/pipeline.hpp"
#include "rqc/qsim.hpp"

using namespace rqc;
using namespace rqc::loc;

namespace {

// ∫_{1/2}^{1} q^a (1-q)^b dq by expanding (1-q)^b term by term.
Rational t_by_expansion(int a, int b) {
    Rational sum = 0;
    for (int j = 0; j <= b; ++j) {
        const int p = a + j + 1;
        Rational term = Rational(binomial(b, j)) * (1 - Rational(1) / Rational(BigInt(1) << p)) / p;
        sum += (j % 2 ? -term : term);
    }
    return sum;
}

// Composite Simpson on [lo, hi] with n (even) panels.
template <class F>
double simpson(F f, double lo, double hi, int n) {
    const double h = (hi - lo) / n;
    double s = f(lo) + f(hi);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
    return s * h / 3.0;
}

// Ensemble error with the posterior written out directly from its
// definition and integrated by Simpson, split at μ.
double ensemble_error_by_simpson(std::int64_t n1, std::int64_t m, int n) {
    const Rational t = t_integral(n1, m - n1);
    const Rational mu_r = t_integral(n1 + 1, m - n1) / t;
    const double log_t = log_abs(t);
    const double mu = to_double(mu_r);
    const auto pdf = [&](double q) {
        return std::exp(n1 * std::log(q) + (m - n1) * std::log1p(-q) - log_t);
    };
    const auto f = [&](double q) { return pdf(q) * tensor_power_distance(mu, q, n); };
    return simpson(f, 0.5, mu, 200000) + simpson(f, mu, 1.0 - 1e-15, 200000);
}

}  // namespace

TEST(TIntegral, HandValue) {
    // ∫_{1/2}^1 q²(1-q) dq = [q³/3 - q⁴/4] = 1/12 - 5/192.
    EXPECT_EQ(t_integral(2, 1), make_rational(11, 192));
    EXPECT_EQ(t_integral(0, 0), make_rational(1, 2));
    EXPECT_EQ(t_integral(1, 0), make_rational(3, 8));
}

TEST(TIntegral, ApproximationGapAtTwoOne) {
    // 1/(C(3,2)·4) = 1/12 overshoots the exact 11/192 by 5/192.
    EXPECT_EQ(make_rational(1, 12) - t_integral(2, 1), make_rational(5, 192));
    EXPECT_NEAR(t_integral_approx(2, 1), 1.0 / 12.0, 1e-15);
}

TEST(TIntegral, ClosedFormMatchesExpansion) {
    for (int a = 0; a <= 30; ++a)
        for (int b = 0; a + b <= 30; ++b) ASSERT_EQ(t_integral(a, b), t_by_expansion(a, b)) << a << "," << b;
}

TEST(TIntegral, LogSpaceAgreesWithExact) {
    for (auto [a, b] : std::vector<std::pair<int, int>>{{0, 0}, {2, 1}, {30, 10}, {150, 50}, {10, 90}, {1000, 1000},
                                                        {1500, 500}, {10, 1990}, {1990, 10}}) {
        const double exact = log_abs(t_integral(a, b));
        EXPECT_NEAR(log_t_integral(a, b), exact, 1e-12 * std::max(1.0, std::abs(exact))) << a << "," << b;
    }
}

TEST(TIntegral, CrossoverConsistency) {
    for (std::int64_t a : {1001, 1200, 1500, 1999}) {
        const std::int64_t b = kExactCap - a;
        const double exact = log_abs(t_integral(a, b));
        // Relative agreement of T itself: |Δ log T| ≈ |ΔT|/T.
        EXPECT_LE(std::abs(log_t_integral(a, b) - exact), 1e-12);
    }
    EXPECT_THROW(t_integral(kExactCap, 1), CapacityError);
}

TEST(TIntegral, ApproximationIsExponentiallyClose) {
    std::vector<double> xs, ys;
    for (int m = 20; m <= 200; m += 20) {
        const int a = (3 * m + 3) / 4;
        const Rational exact = t_integral(a, m - a);
        const Rational approx = 1 / (Rational(binomial(m, a)) * (m + 1));
        xs.push_back(m);
        ys.push_back(log_abs((approx - exact) / exact));
    }
    for (std::size_t i = 1; i < ys.size(); ++i) EXPECT_LT(ys[i], ys[i - 1]);
}

TEST(Marginal, NormalizedExactly) {
    for (int m = 0; m <= 50; ++m) {
        Rational s = 0;
        for (int n1 = 0; n1 <= m; ++n1) s += marginal_pmf(n1, m);
        ASSERT_EQ(s, Rational(1)) << "M=" << m;
    }
}

TEST(Marginal, CloseToUniformAboveHalf) {
    const int m = 200;
    for (int n1 : {150, 170, 200}) EXPECT_NEAR(to_double(marginal_pmf(n1, m)) * (m + 1) / 2, 1.0, 1e-6);
    EXPECT_LT(to_double(marginal_pmf(50, m)), 1e-10);
}

TEST(Marginal, ExactMassAboveHalfMatchesMonteCarlo) {
    // Σ_{n1 > M/2} P(n1) against direct simulation of the two-stage model.
    const int m = 100;
    Rational above = 0;
    for (int n1 = m / 2 + 1; n1 <= m; ++n1) above += marginal_pmf(n1, m);
    Rng rng(31);
    const int trials = 200000;
    int hits = 0;
    for (int i = 0; i < trials; ++i) hits += 2 * simulate_trials(sample_theta(rng), m, rng).n1 > m;
    const double p = to_double(above);
    EXPECT_NEAR(static_cast<double>(hits) / trials, p, 5 * std::sqrt(p * (1 - p) / trials));
}

TEST(Overlap, ParameterMaps) {
    EXPECT_NEAR(q_from_theta(0).value(), 1.0, 1e-15);
    EXPECT_NEAR(q_from_theta(std::numbers::pi).value(), 0.5, 1e-15);
    EXPECT_NEAR(q_from_theta(std::numbers::pi / 2).value(), 0.75, 1e-15);
    for (double t : {1e-9, 1e-4, 0.3, 1.5, 3.0}) {
        EXPECT_NEAR(theta_from_q(q_from_theta(t).value()), t, 1e-7 * std::max(1.0, t));
        EXPECT_NEAR(theta_from_complement(complement_from_theta(t)), t, 1e-14 * std::max(1.0, t));
    }
    EXPECT_THROW(OverlapParam(0.49), DomainError);
    EXPECT_THROW(OverlapParam(1.01), DomainError);
}

TEST(Overlap, PriorMakesQUniform) {
    Rng rng(5);
    std::vector<int> bins(10, 0);
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double q = q_from_theta(sample_theta(rng)).value();
        ++bins[std::min(9, static_cast<int>((q - 0.5) * 20))];
    }
    for (int b : bins) EXPECT_NEAR(b, n / 10.0, 6 * std::sqrt(n * 0.1 * 0.9));
}

TEST(Trials, CountsAreBinomial) {
    Rng rng(6);
    const double theta = 1.0, q = (3 + std::cos(theta)) / 4;
    const int m = 400, reps = 4000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < reps; ++i) {
        const auto c = simulate_trials(theta, m, rng);
        ASSERT_LE(c.n1, m);
        s += c.n1;
        s2 += double(c.n1) * c.n1;
    }
    const double mean = s / reps, var = s2 / reps - mean * mean;
    EXPECT_NEAR(mean, m * q, 6 * std::sqrt(m * q * (1 - q) / reps));
    EXPECT_NEAR(var / (m * q * (1 - q)), 1.0, 0.1);
    EXPECT_EQ(simulate_trials(0.0, 1000000000000LL, rng).n1, 1000000000000LL);
    EXPECT_THROW(simulate_trials(1.0, 0, rng), DomainError);
}

TEST(Posterior, MomentsByHand) {
    // n1 = 2, M = 3: μ = T(3,1)/T(2,1), E[q²] = T(4,1)/T(2,1).
    const auto e = posterior_moments_exact(2, 3);
    EXPECT_EQ(e.mean, t_integral(3, 1) / t_integral(2, 1));
    EXPECT_EQ(e.second_moment, t_integral(4, 1) / t_integral(2, 1));
    EXPECT_EQ(e.variance_central, e.second_moment - e.mean * e.mean);
}

TEST(Posterior, MomentIdentityAndVarianceBound) {
    for (std::int64_t m = 1; m <= 200; ++m) {
        const Rational inv_m = make_rational(1, m);
        for (std::int64_t n1 = 0; n1 <= m; ++n1) {
            const auto e = posterior_moments_exact(n1, m);
            ASSERT_EQ(e.mean * t_integral(n1, m - n1), t_integral(n1 + 1, m - n1));
            ASSERT_LT(e.variance_central, inv_m) << n1 << "/" << m;
        }
    }
}

TEST(Posterior, ApproximationsAreExponentiallyClose) {
    // The gap is set by the Beta mass below 1/2, which at n1 = 3M/4 decays
    // like exp(-M·KL(1/2 || 3/4)) up to polynomial factors.
    const double kl = 0.5 * std::log(0.5 / 0.75) + 0.5 * std::log(0.5 / 0.25);
    std::vector<double> ms, log_mean_gap, log_var_gap;
    for (std::int64_t m = 40; m <= 200; m += 8) {
        const std::int64_t n1 = (3 * m + 3) / 4;
        const auto e = posterior_moments_exact(n1, m);
        const Rational mu_approx = make_rational(n1 + 1, m + 2);
        const Rational var_approx = make_rational((n1 + 1) * (m + 1 - n1), (m + 2) * (m + 2) * (m + 3));
        ms.push_back(static_cast<double>(m));
        log_mean_gap.push_back(log_abs(e.mean - mu_approx));
        log_var_gap.push_back(log_abs(e.variance_central - var_approx));
        // The second moment is a different quantity altogether.
        EXPECT_GT(to_double(e.second_moment - var_approx), 0.25);
    }
    const double mean_rate = pipeline::fit_slope(ms, log_mean_gap);
    const double var_rate = pipeline::fit_slope(ms, log_var_gap);
    EXPECT_LT(mean_rate, 0.0);
    EXPECT_LT(var_rate, 0.0);
    EXPECT_NEAR(mean_rate, -kl, 0.02);
    EXPECT_NEAR(var_rate, -kl, 0.02);
}

TEST(PosteriorProperty, DensityIntegratesToOne) {
    prop::for_all(50, 301, [](prop::Gen& g, int) {
        const std::int64_t m = g.integer(1, 500);
        const std::int64_t n1 = g.integer(0, m);
        const Posterior post(n1, m);
        std::vector<double> breaks{0.5, 1.0};
        if (post.mode() > 0.5 && post.mode() < 1.0) breaks.insert(breaks.begin() + 1, post.mode());
        quad::QuadratureOptions o;
        o.abs_tol = 1e-12;
        EXPECT_NEAR(quad::integrate([&](double q) { return post.pdf(q); }, breaks, o).value, 1.0, 1e-10);
    });
}

TEST(Posterior, FloatPathMomentsMatchQuadrature) {
    for (auto [n1, m] : std::vector<std::pair<std::int64_t, std::int64_t>>{{3000, 4000}, {2600, 5000}, {2400, 5000}}) {
        const auto s = posterior_summary(n1, m);
        EXPECT_FALSE(s.exact_arithmetic);
        const Posterior post(n1, m);
        quad::QuadratureOptions o;
        o.abs_tol = 1e-13;
        std::vector<double> breaks{0.5, 1.0};
        if (post.mode() > 0.5) breaks.insert(breaks.begin() + 1, post.mode());
        const double z = quad::integrate([&](double q) { return post.pdf(q); }, breaks, o).value;
        const double m1 = quad::integrate([&](double q) { return q * post.pdf(q); }, breaks, o).value / z;
        const double m2 = quad::integrate([&](double q) { return (q - m1) * (q - m1) * post.pdf(q); }, breaks, o).value / z;
        EXPECT_NEAR(s.mean_exact, m1, 1e-11);
        EXPECT_NEAR(s.variance_central, m2, 1e-12);
        EXPECT_NEAR(s.mean_complement, 1 - m1, 1e-11);
    }
}

TEST(Posterior, SummaryContinuousAcrossCrossover) {
    const auto exact = posterior_summary(1500, kExactCap - 2);
    const auto flt = posterior_summary(1500, kExactCap - 1);
    EXPECT_TRUE(exact.exact_arithmetic);
    EXPECT_FALSE(flt.exact_arithmetic);
    // One more singlet moves the mean by about σ²/(1-q).
    EXPECT_NEAR(flt.mean_exact, exact.mean_exact - exact.variance_central / (1 - exact.mean_exact), 1e-6);
}

TEST(Distances, PureStateDistanceMatchesDenseSimulation) {
    prop::for_all(100, 302, [](prop::Gen& g, int) {
        const double q1 = g.real(0.5, 1.0), q2 = g.real(0.5, 1.0);
        const double dense = qsim::trace_distance(qsim::pure_qubit(theta_from_q(q1)).density(),
                                                  qsim::pure_qubit(theta_from_q(q2)).density());
        EXPECT_NEAR(trace_distance_q(q1, q2), dense, 1e-10);
    });
}

TEST(Distances, BoundDominatesOnGrid) {
    for (int i = 0; i < 200; ++i)
        for (int j = 0; j < 200; ++j) {
            const double q1 = 0.5 + 0.5 * i / 199.0, q2 = 0.5 + 0.5 * j / 199.0;
            ASSERT_GE(trace_distance_bound(q1, q2), trace_distance_q(q1, q2)) << q1 << " " << q2;
        }
}

TEST(Distances, TensorPowerMatchesDenseUpToSix) {
    prop::for_all(20, 303, [](prop::Gen& g, int) {
        const double t1 = g.real(0, std::numbers::pi), t2 = g.real(0, std::numbers::pi);
        const auto a = qsim::pure_qubit(t1).density(), b = qsim::pure_qubit(t2).density();
        auto pa = a, pb = b;
        for (int n = 1; n <= 6; ++n) {
            if (n > 1) {
                pa = pa.tensor(a);
                pb = pb.tensor(b);
            }
            EXPECT_NEAR(tensor_power_distance(q_from_theta(t1).value(), q_from_theta(t2).value(), n),
                        qsim::trace_distance(pa, pb), 1e-10);
        }
    });
}

TEST(Distances, SqrtNTensorInequality) {
    for (int i = 0; i <= 156; ++i)
        for (int n = 1; n <= 64; ++n) {
            const double f = static_cast<double>(i) / 156;
            ASSERT_LE(tensor_power_distance_from_fidelity(f, n),
                      std::sqrt(double(n)) * tensor_power_distance_from_fidelity(f, 1) + 1e-12);
        }
}

TEST(Distances, SqrtNMinusOneVariantFailsNearUnitFidelity) {
    // N = 1: the left side is positive, the right side zero.
    EXPECT_GT(tensor_power_distance_from_fidelity(0.9, 1), 0.0);
    // N = 2 near F = 1: 2√(1-F²) ≈ 2√2·√(1-F) > 1·2√(1-F).
    const double f = 0.999;
    EXPECT_GT(tensor_power_distance_from_fidelity(f, 2), tensor_power_distance_from_fidelity(f, 1));
}

TEST(Ensemble, MatchesSimpsonOracle) {
    for (auto [n1, m, n] : std::vector<std::tuple<int, int, int>>{{15, 20, 1}, {15, 20, 4}, {80, 100, 3}, {400, 500, 8}}) {
        const double oracle = ensemble_error_by_simpson(n1, m, n);
        EXPECT_NEAR(ensemble_error_exact(n1, m, n), oracle, 1e-9) << n1 << "/" << m << " N=" << n;
    }
}

TEST(Ensemble, MatchesMonteCarloOnFloatPath) {
    // Sample the truncated Beta posterior by rejection, average the N = 1
    // distance to μ.
    const std::int64_t m = 1000000, n1 = 800000;
    const auto s = posterior_summary(n1, m);
    boost::random::beta_distribution<double> beta(n1 + 1.0, m - n1 + 1.0);
    Rng rng(17);
    const int samples = 200000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < samples;) {
        const double q = beta(rng);
        if (q < 0.5) continue;
        const double d = trace_distance_q(s.mean_exact, q);
        sum += d;
        sum2 += d * d;
        ++i;
    }
    const double mean = sum / samples, se = std::sqrt((sum2 / samples - mean * mean) / samples);
    EXPECT_NEAR(ensemble_error_exact(n1, m, 1), mean, 5 * se);
}

TEST(Ensemble, ChainDominance) {
    for (std::int64_t m : {64, 512, 4096})
        for (int n : {2, 8, 32})
            for (std::int64_t n1 : {m / 2 + 1, (3 * m + 3) / 4, m})
                EXPECT_LE(ensemble_error_exact(n1, m, n), ensemble_error_bound(n, m)) << n1 << "/" << m << " N=" << n;
}

TEST(Ensemble, VeryLargeM) {
    const std::int64_t m = 500000000000000000LL;
    const double e = ensemble_error_exact(m / 4 * 3, m, 10);
    EXPECT_TRUE(std::isfinite(e));
    EXPECT_GT(e, 0.0);
    EXPECT_LT(e, ensemble_error_bound(10, m));
}

TEST(Bound, PublishedExamples) {
    EXPECT_EQ(ensemble_error_bound(1, 1000), 0.0);
    EXPECT_NEAR(ensemble_error_bound(10, 1000000), 2 * std::sqrt(72.0) * std::sqrt(2.0 / 100.0), 1e-12);
    EXPECT_GT(ensemble_error_bound(10, 1000), ensemble_error_bound(10, 2000));
    EXPECT_LT(ensemble_error_bound(10, 1000), ensemble_error_bound(11, 1000));
}

TEST(Bound, BudgetWithExplicitH) {
    const auto b = error_budget(5, 4096);
    EXPECT_NEAR(b.h, 4.0, 1e-12);
    EXPECT_NEAR(b.bound, ensemble_error_bound(5, 4096), 1e-12);
    EXPECT_GT(error_budget(5, 4096, 2.0).bound, b.bound);
    EXPECT_GT(error_budget(5, 4096, 8.0).bound, b.bound);
    // 1/h² + hσ is minimized at h = (2/σ)^{1/3}, slightly above M^{1/6}.
    EXPECT_LT(error_budget(5, 4096, std::cbrt(128.0)).bound, b.bound);
}

TEST(RequiredM, InvertsTheBound) {
    for (auto [n, eps] : std::vector<std::pair<int, double>>{{5, 0.1}, {10, 0.05}, {2, 1.0}, {3, 0.7}}) {
        const std::int64_t m = required_m(n, eps);
        // bound <= ε  <=>  M ε⁶ >= (64(N-1))³, checked exactly with ε's
        // binary value.
        const Rational e(eps);
        const Rational e6 = e * e * e * e * e * e;
        const Rational c = make_rational(64 * (n - 1));
        EXPECT_GE(Rational(m) * e6, c * c * c);
        EXPECT_LT(Rational(m - 1) * e6, c * c * c);
        EXPECT_LE(ensemble_error_bound(n, m), eps * (1 + 1e-12));
    }
    EXPECT_EQ(required_m(2, 1.0), 64LL * 64 * 64);
}

TEST(RequiredM, CapacityAndDomain) {
    EXPECT_THROW(required_m(1000, 1e-3), CapacityError);
    EXPECT_NEAR(log_required_m(1000, 1e-3), 3 * std::log(64.0 * 999 / 1e-6), 1e-9);
    EXPECT_THROW(required_m(1, 0.1), DomainError);
    EXPECT_THROW(required_m(4, 0.0), DomainError);
}
