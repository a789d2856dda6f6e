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


#include "rqc/localization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/log1p.hpp>
#include <boost/random/binomial_distribution.hpp>

#include "rqc/error.hpp"

namespace rqc::loc {

namespace {

constexpr double kLogUnderflow = -745.0;

double xlogy(double x, double y) { return x == 0.0 ? 0.0 : x * std::log(y); }

void check_q(double q) {
    if (!(q >= 0.5 && q <= 1.0)) throw DomainError("overlap q must lie in [1/2, 1], got " + std::to_string(q));
}

void check_counts(std::int64_t n1, std::int64_t m) {
    if (m < 0 || n1 < 0 || n1 > m)
        throw DomainError("invalid counts n1=" + std::to_string(n1) + ", M=" + std::to_string(m));
}

double lgamma_d(double x) { return boost::math::lgamma(x); }

// lgamma(x) - ((x - 1/2) log x - x + log(2π)/2), for x >= 15.
double stirling_remainder(double x) {
    const double r = 1.0 / x, r2 = r * r;
    return r * (1.0 / 12 - r2 * (1.0 / 360 - r2 * (1.0 / 1260 - r2 * (1.0 / 1680 - r2 * (1.0 / 1188)))));
}

// log B(x, y) without the cancellation of three large lgamma values.
double log_beta(double x, double y) {
    if (x < y) std::swap(x, y);
    const double s = x + y;
    if (x < 15) return lgamma_d(x) + lgamma_d(y) - lgamma_d(s);
    const double tail = (x - 0.5) * std::log1p(-y / s) + stirling_remainder(x) - stirling_remainder(s);
    if (y < 15) return lgamma_d(y) + tail - y * std::log(s) + y;
    return 0.5 * std::log(2 * std::numbers::pi) + tail + (y - 0.5) * std::log(y / s) - 0.5 * std::log(s) +
           stirling_remainder(y);
}

// Bisection for the point where a monotone function crosses `level`.
template <class F>
double bisect(F&& f, double lo, double hi, double level) {
    for (int i = 0; i < 400; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        ((f(mid) >= level) == (f(lo) >= level) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Mean and 1 - mean, each to full relative precision.
struct MeanPair {
    double mean;
    double complement;
};

}  // namespace

OverlapParam::OverlapParam(double q) : q_(q) { check_q(q); }

double OverlapParam::theta() const { return theta_from_q(q_); }

double theta_from_complement(double c) {
    if (!(c >= 0.0 && c <= 0.5)) throw DomainError("1 - q must lie in [0, 1/2]");
    if (c <= 0.25) return 2.0 * std::asin(std::sqrt(2.0 * c));
    return std::acos(1.0 - 4.0 * c);
}

double complement_from_theta(double theta) {
    const double s = std::sin(theta / 2);
    return 0.5 * s * s;
}

OverlapParam q_from_theta(double theta) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi))
        throw DomainError("theta must lie in [0, pi], got " + std::to_string(theta));
    return OverlapParam(std::clamp((3.0 + std::cos(theta)) / 4.0, 0.5, 1.0));
}

double theta_from_q(double q) {
    check_q(q);
    return theta_from_complement(1.0 - q);
}

double theta_from_uniform(double u) {
    if (!(u >= 0.0 && u <= 1.0)) throw DomainError("uniform variate must lie in [0, 1]");
    return std::acos(std::clamp(1.0 - 2.0 * u, -1.0, 1.0));
}

double sample_theta(Rng& rng) { return theta_from_uniform(rng.uniform()); }

void TrialCounts::validate() const {
    if (m < 1) throw DomainError("M must be >= 1");
    check_counts(n1, m);
}

TrialCounts simulate_trials(double theta, std::int64_t m, Rng& rng) {
    if (m < 1) throw DomainError("M must be >= 1");
    const double q = q_from_theta(theta).value();
    TrialCounts out{m, 0};
    if (q >= 1.0) {
        out.n1 = m;
    } else if (m <= kExactCap) {
        for (std::int64_t i = 0; i < m; ++i)
            if (rng.uniform() < q) ++out.n1;
    } else {
        boost::random::binomial_distribution<std::int64_t, double> dist(m, q);
        out.n1 = dist(rng);
    }
    return out;
}

Rational t_integral(std::int64_t a, std::int64_t b) {
    if (a < 0 || b < 0) throw DomainError("T(a, b) needs a, b >= 0");
    if (a + b > kExactCap)
        throw CapacityError("T(a, b) exact arithmetic is capped at a + b <= " + std::to_string(kExactCap) +
                            "; use log_t_integral");
    const std::int64_t n = a + b + 1;
    BigInt term = 1;  // C(n, j)
    BigInt partial = 0;
    for (std::int64_t j = 0; j <= a; ++j) {
        partial += term;
        term = term * (n - j) / (j + 1);
    }
    BigInt denom = binomial(a + b, a) * n;
    denom <<= static_cast<unsigned>(n);
    return Rational(partial, denom);
}

double log_t_integral(std::int64_t a, std::int64_t b) {
    if (a < 0 || b < 0) throw DomainError("T(a, b) needs a, b >= 0");
    const double da = static_cast<double>(a), db = static_cast<double>(b);
        const double tail = boost::math::ibetac(da + 1, db + 1, 0.5);
    if (tail > 1e-280) return log_beta(da + 1, db + 1) + std::log(tail);
    // Mass sits below 1/2: integrate the density relative to its value at
    // q = 1/2, where it peaks on [1/2, 1].
    const double slope = 2.0 * (db - da);
    const double hi = std::min(1.0, 0.5 + 800.0 / slope);
    const auto rel = [&](double q) { return std::exp(xlogy(da, 2 * q) + xlogy(db, 2 * (1 - q))); };
    quad::QuadratureOptions opt;
    opt.abs_tol = 1e-300;
    opt.rel_tol = 1e-12;
    const auto r = quad::integrate(rel, 0.5, hi, opt);
    if (!r.converged) throw NumericalError("log T(a, b) quadrature failed: " + r.diagnostics());
    return -(da + db) * std::numbers::ln2 + std::log(r.value);
}

double t_integral_approx(std::int64_t a, std::int64_t b) {
    if (a < 0 || b < 0 || !(a > b)) throw DomainError("T(a, b) approximation requires a > (a+b)/2");
    const double da = static_cast<double>(a), db = static_cast<double>(b);
    // 1/(C(a+b, a)(a+b+1)) = B(a+1, b+1).
    return std::exp(log_beta(da + 1, db + 1));
}

Rational marginal_pmf(std::int64_t n1, std::int64_t m) {
    check_counts(n1, m);
    return 2 * Rational(binomial(m, n1)) * t_integral(n1, m - n1);
}

Posterior::Posterior(std::int64_t n1, std::int64_t m) : n1_(n1), m_(m), exact_(m <= kExactCap) {
    check_counts(n1, m);
    const double a = static_cast<double>(n1), b = static_cast<double>(m - n1);
    if (m == 0) {
        mode_ = 0.75;
        mode_complement_ = 0.25;
    } else if (2 * n1 <= m) {
        mode_ = 0.5;
        mode_complement_ = 0.5;
        linear_coefficient_ = 2.0 * (a - b);
    } else {
        mode_ = a / (a + b);
        mode_complement_ = b / (a + b);
    }
    if (exact_) {
        log_t_ = log_abs(t_integral(n1, m - n1));
        return;
    }
    const auto [lo, hi] = support_window();
    const auto w = [&](double x) { return std::exp(log_relative(x)); };
    quad::QuadratureOptions opt;
    opt.abs_tol = 1e-300;
    opt.rel_tol = 1e-12;
    std::vector<double> breaks{lo, hi};
    if (lo < 0.0 && hi > 0.0) breaks.push_back(0.0);
    const auto r = quad::integrate(w, breaks, opt);
    if (!r.converged) throw NumericalError("posterior normalization failed: " + r.diagnostics());
    log_zrel_ = std::log(r.value);
    log_t_ = log_zrel_ + xlogy(a, mode_) + xlogy(b, mode_complement_);
}

double Posterior::log_relative(double x) const {
    const double a = static_cast<double>(n1_), b = static_cast<double>(m_ - n1_);
    if (b > 0 && x >= mode_complement_) return -std::numeric_limits<double>::infinity();
    // log ratio = a log1p(x/q*) + b log1p(-x/c*). The linear parts sum to
    // x (a/q* - b/c*), which vanishes at an interior mode; splitting them off
    // keeps the O(M) terms from cancelling numerically.
    double out = linear_coefficient_ * x;
    if (a > 0) out += a * boost::math::log1pmx(x / mode_);
    if (b > 0) out += b * boost::math::log1pmx(-x / mode_complement_);
    return out;
}

std::pair<double, double> Posterior::support_window() const {
    const auto f = [&](double x) { return log_relative(x); };
    double lo = -(0.5 - mode_complement_), hi = mode_complement_;
    if (f(lo) < kLogUnderflow) lo = bisect(f, lo, 0.0, kLogUnderflow);
    if (f(hi) < kLogUnderflow) hi = bisect(f, 0.0, hi, kLogUnderflow);
    return {lo, hi};
}

double Posterior::pdf(double q) const {
    check_q(q);
    if (exact_) {
        return std::exp(xlogy(static_cast<double>(n1_), q) + xlogy(static_cast<double>(m_ - n1_), 1.0 - q) - log_t_);
    }
    return std::exp(log_relative((mode_complement_ - (1.0 - q))) - log_zrel_);
}

double posterior_pdf(double q, std::int64_t n1, std::int64_t m) {
    check_q(q);
    return Posterior(n1, m).pdf(q);
}

ExactMoments posterior_moments_exact(std::int64_t n1, std::int64_t m) {
    check_counts(n1, m);
    if (m + 2 > kExactCap) throw CapacityError("exact posterior moments are capped at M + 2 <= kExactCap");
    const Rational t0 = t_integral(n1, m - n1);
    const Rational t1 = t_integral(n1 + 1, m - n1);
    const Rational t2 = t_integral(n1 + 2, m - n1);
    ExactMoments out;
    out.mean = t1 / t0;
    out.second_moment = t2 / t0;
    out.variance_central = out.second_moment - out.mean * out.mean;
    return out;
}

double PosteriorSummary::sigma() const { return std::sqrt(std::max(variance_central, 0.0)); }

namespace {

struct FloatMoments {
    MeanPair mean;
    double second_moment;
    double variance;
};

// Moments above the exact cap. When the mass is mostly above 1/2 the
// truncated moments are the Beta moments corrected by ratios of lower-tail
// incomplete beta functions; otherwise integrate the relative density.
FloatMoments float_moments(std::int64_t n1, std::int64_t m) {
    const double a = static_cast<double>(n1), b = static_cast<double>(m - n1), mm = static_cast<double>(m);
    const double i0 = boost::math::ibeta(a + 1, b + 1, 0.5);
    if (i0 <= 0.5) {
        const double i1 = boost::math::ibeta(a + 2, b + 1, 0.5);
        const double i2 = boost::math::ibeta(a + 3, b + 1, 0.5);
        const double mu_b = (a + 1) / (mm + 2);
        const double var_b = (a + 1) * (b + 1) / ((mm + 2) * (mm + 2) * (mm + 3));
        const double r1 = (1 - i1) / (1 - i0);
        const double r2 = (1 - i2) / (1 - i0);
        const double r1m1 = (i0 - i1) / (1 - i0);
        const double spread = (-i2 - i0 + i2 * i0 + 2 * i1 - i1 * i1) / ((1 - i0) * (1 - i0));  // r2 - r1²
        FloatMoments out;
        out.mean = {mu_b * r1, (b + 1) / (mm + 2) - mu_b * r1m1};
        out.variance = var_b * r2 + mu_b * mu_b * spread;
        out.second_moment = out.variance + out.mean.mean * out.mean.mean;
        return out;
    }
    const Posterior post(n1, m);
    const auto [lo, hi] = post.support_window();
    const auto w = [&](double x) { return std::exp(post.log_relative(x)); };
    quad::QuadratureOptions opt;
    opt.abs_tol = 1e-300;
    opt.rel_tol = 1e-12;
    const auto z = quad::integrate(w, lo, hi, opt);
    const auto zx = quad::integrate([&](double x) { return x * w(x); }, lo, hi, opt);
    const double mean_x = zx.value / z.value;
    opt.rel_tol = 1e-10;
    const auto zv = quad::integrate([&](double x) { return (x - mean_x) * (x - mean_x) * w(x); }, lo, hi, opt);
    if (!z.converged || !zv.converged) throw NumericalError("posterior moment quadrature failed: " + z.diagnostics());
    const double mean_c = post.mode_complement() - mean_x;
    FloatMoments out;
    out.mean = {1.0 - mean_c, mean_c};
    out.variance = zv.value / z.value;
    out.second_moment = out.variance + out.mean.mean * out.mean.mean;
    return out;
}

}  // namespace

PosteriorSummary posterior_summary(std::int64_t n1, std::int64_t m) {
    check_counts(n1, m);
    const double a = static_cast<double>(n1), mm = static_cast<double>(m);
    PosteriorSummary s;
    s.mean_approx = (a + 1) / (mm + 2);
    s.variance_approx = (a + 1) * (mm + 1 - a) / ((mm + 2) * (mm + 2) * (mm + 3));
    if (m + 2 <= kExactCap) {
        const ExactMoments e = posterior_moments_exact(n1, m);
        s.mean_exact = to_double(e.mean);
        s.second_moment_exact = to_double(e.second_moment);
        s.variance_central = to_double(e.variance_central);
        s.mean_complement = to_double(Rational(1) - e.mean);
        s.exact_arithmetic = true;
    } else {
        const FloatMoments f = float_moments(n1, m);
        s.mean_exact = f.mean.mean;
        s.second_moment_exact = f.second_moment;
        s.variance_central = f.variance;
        s.mean_complement = f.mean.complement;
        s.exact_arithmetic = false;
    }
    if (m > 0 && !(s.variance_central < 1.0 / mm))
        throw NumericalError("posterior variance " + std::to_string(s.variance_central) + " is not below 1/M");
    return s;
}

double trace_distance_q(double q1, double q2) {
    const double t1 = theta_from_q(q1), t2 = theta_from_q(q2);
    return 2.0 * std::sin(std::fabs(t1 - t2) / 2.0);
}

double trace_distance_bound(double q1, double q2) {
    check_q(q1);
    check_q(q2);
    return 2.0 * std::sqrt(8.0 * std::fabs(q1 - q2));
}

double tensor_power_distance_from_fidelity(double fidelity, int n) {
    if (n < 1) throw DomainError("tensor power N must be >= 1");
    if (!(fidelity >= 0.0 && fidelity <= 1.0)) throw DomainError("fidelity must lie in [0, 1]");
    if (fidelity == 0.0) return 2.0;
    return 2.0 * std::sqrt(-std::expm1(n * std::log(fidelity)));
}

namespace {
// 2 sqrt(1 - cos²(δ/2)^N) without forming cos² near 1.
double tensor_distance_from_angle(double delta, int n) {
    const double s = std::sin(delta / 2.0);
    const double s2 = s * s;
    if (s2 >= 1.0) return 2.0;
    return 2.0 * std::sqrt(-std::expm1(n * std::log1p(-s2)));
}
}  // namespace

double tensor_power_distance(double q1, double q2, int n) {
    if (n < 1) throw DomainError("tensor power N must be >= 1");
    return tensor_distance_from_angle(theta_from_q(q1) - theta_from_q(q2), n);
}

EnsembleError ensemble_error_detail(std::int64_t n1, std::int64_t m, int n) {
    check_counts(n1, m);
    return ensemble_error_detail(n1, m, n, posterior_summary(n1, m));
}

EnsembleError ensemble_error_detail(std::int64_t n1, std::int64_t m, int n, const PosteriorSummary& summary) {
    check_counts(n1, m);
    if (n < 1) throw DomainError("N must be >= 1");
    EnsembleError out;
    const MeanPair mu{summary.mean_exact, summary.mean_complement};
    out.mu = mu.mean;
    const double theta_mu = theta_from_complement(std::clamp(mu.complement, 0.0, 0.5));

    // Integrate in the offset x = q - q*; θ only enters the distance.
    const Posterior post(n1, m);
    const auto [lo, hi] = post.support_window();
    const double mode_c = post.mode_complement();
    const auto weight = [&](double x) { return std::exp(post.log_relative(x)); };
    const auto theta_at = [&](double x) { return theta_from_complement(std::clamp(mode_c - x, 0.0, 0.5)); };
    std::vector<double> breaks{lo, hi};
    const double x_mu = mode_c - mu.complement;
    if (x_mu > lo && x_mu < hi) breaks.push_back(x_mu);
    std::sort(breaks.begin(), breaks.end());
    double scale = 0.0;
    for (std::size_t j = 0; j + 1 < breaks.size(); ++j) scale += quad::gauss_legendre(weight, breaks[j], breaks[j + 1], 64);
    quad::QuadratureOptions opt;
    opt.abs_tol = std::max(scale * 1e-12, 1e-300);
    out.denominator = quad::integrate(weight, breaks, opt);
    opt.abs_tol = std::max(out.denominator.value * 1e-11, 1e-300);
    out.numerator = quad::integrate(
        [&](double x) { return weight(x) * tensor_distance_from_angle(theta_at(x) - theta_mu, n); }, breaks, opt);
    if (!out.denominator.converged || !out.numerator.converged || !(out.denominator.value > 0.0))
        throw NumericalError("ensemble error quadrature failed (n1=" + std::to_string(n1) + ", M=" + std::to_string(m) +
                             ", N=" + std::to_string(n) + "): numerator " + out.numerator.diagnostics() +
                             "; denominator " + out.denominator.diagnostics());
    out.value = out.numerator.value / out.denominator.value;
    return out;
}

double ensemble_error_exact(std::int64_t n1, std::int64_t m, int n) { return ensemble_error_detail(n1, m, n).value; }

ErrorBudget error_budget(int n, std::int64_t m, double h) {
    if (n < 1 || m < 1) throw DomainError("error budget needs N >= 1 and M >= 1");
    if (!(h > 0.0)) throw DomainError("Chebyshev parameter h must be positive");
    const double sigma = 1.0 / std::sqrt(static_cast<double>(m));
    ErrorBudget b{n, m, h, 0.0};
    b.bound = 2.0 * std::sqrt(8.0 * (n - 1)) * std::sqrt(1.0 / (h * h) + h * sigma);
    return b;
}

ErrorBudget error_budget(int n, std::int64_t m) {
    if (n < 1 || m < 1) throw DomainError("error budget needs N >= 1 and M >= 1");
    ErrorBudget b = error_budget(n, m, std::pow(static_cast<double>(m), 1.0 / 6.0));
    b.bound = ensemble_error_bound(n, m);
    return b;
}

double ensemble_error_bound(int n, std::int64_t m) {
    if (n < 1 || m < 1) throw DomainError("error bound needs N >= 1 and M >= 1");
    return 2.0 * std::sqrt(8.0 * (n - 1)) * std::sqrt(2.0 / std::cbrt(static_cast<double>(m)));
}

double log_required_m(int n, double epsilon) {
    if (n < 2) throw DomainError("required M needs N >= 2");
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw DomainError("epsilon must be positive and finite");
    return 3.0 * (std::log(64.0 * (n - 1)) - 2.0 * std::log(epsilon));
}

std::int64_t required_m(int n, double epsilon) {
    const double log_m = log_required_m(n, epsilon);
    if (log_m > std::log(static_cast<double>(std::numeric_limits<std::int64_t>::max())) + 1.0)
        throw CapacityError("required M exceeds 2^63-1 (log M = " + std::to_string(log_m) + ")");
    // M >= (64(N-1))³ / ε⁶ with ε as an exact binary rational.
    const Rational eps(epsilon);
    const Rational eps2 = eps * eps;
    const Rational eps6 = eps2 * eps2 * eps2;
    const BigInt base = BigInt(64) * (n - 1);
    const Rational threshold = Rational(base * base * base) / eps6;
    BigInt ceil_value = numerator(threshold) / denominator(threshold);
    if (Rational(ceil_value) < threshold) ceil_value += 1;
    if (ceil_value < 1) ceil_value = 1;
    if (ceil_value > BigInt(std::numeric_limits<std::int64_t>::max()))
        throw CapacityError("required M exceeds 2^63-1 (log M = " + std::to_string(log_m) + ")");
    return ceil_value.convert_to<std::int64_t>();
}

}  // namespace rqc::loc
