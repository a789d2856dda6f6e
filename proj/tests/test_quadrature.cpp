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


#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "rqc/error.hpp"
#include "rqc/quadrature.hpp"

using namespace rqc;
using namespace rqc::quad;

TEST(GaussLegendre, LowOrderNodesByHand) {
    const auto& r2 = GaussLegendreRule::get(2);
    EXPECT_NEAR(r2.nodes[0], -1 / std::sqrt(3.0), 1e-15);
    EXPECT_NEAR(r2.nodes[1], 1 / std::sqrt(3.0), 1e-15);
    EXPECT_NEAR(r2.weights[0], 1.0, 1e-15);
    const auto& r3 = GaussLegendreRule::get(3);
    EXPECT_NEAR(r3.nodes[1], 0.0, 1e-15);
    EXPECT_NEAR(r3.nodes[2], std::sqrt(0.6), 1e-15);
    EXPECT_NEAR(r3.weights[1], 8.0 / 9.0, 1e-15);
    EXPECT_NEAR(r3.weights[2], 5.0 / 9.0, 1e-15);
}

TEST(GaussLegendre, WeightsSumToTwo) {
    for (int n : {1, 5, 20, 64, 96}) {
        double s = 0.0;
        for (double w : GaussLegendreRule::get(n).weights) s += w;
        EXPECT_NEAR(s, 2.0, 1e-13) << n;
    }
}

TEST(GaussLegendre, ExactForPolynomialsUpToDegree2nMinus1) {
    for (int n = 1; n <= 12; ++n)
        for (int d = 0; d <= 2 * n - 1; ++d) {
            const double v = gauss_legendre([d](double x) { return std::pow(x, d); }, 0.0, 1.0, n);
            EXPECT_NEAR(v, 1.0 / (d + 1), 1e-13) << "n=" << n << " d=" << d;
        }
}

TEST(Adaptive, SmoothIntegrands) {
    EXPECT_NEAR(integrate([](double x) { return std::sin(x); }, 0, std::numbers::pi).value, 2.0, 1e-12);
    EXPECT_NEAR(integrate([](double x) { return std::exp(x); }, 0, 1).value, std::exp(1.0) - 1, 1e-12);
}

TEST(Adaptive, EndpointSingularityConverges) {
    const auto r = integrate([](double x) { return std::sqrt(x); }, 0, 1);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.value, 2.0 / 3.0, 1e-10);
}

TEST(Adaptive, KinkHandledByBreakpoint) {
    const auto f = [](double x) { return std::abs(x - 0.3); };
    const auto r = integrate(f, std::vector<double>{0.0, 0.3, 1.0});
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.value, 0.045 + 0.245, 1e-13);
    EXPECT_LE(r.panels, 4);
}

TEST(Adaptive, RelativeTolerance) {
    QuadratureOptions o;
    o.abs_tol = 0;
    o.rel_tol = 1e-12;
    const auto r = integrate([](double x) { return 1e-30 * std::exp(-x * x); }, 0, 5, o);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.value / 1e-30, std::sqrt(std::numbers::pi) / 2 * std::erf(5.0), 1e-11);
}

TEST(Adaptive, NonConvergenceIsReported) {
    QuadratureOptions o;
    o.max_panels = 4;
    o.abs_tol = 1e-15;
    const auto f = [](double x) { return x < 0.123456 ? 0.0 : 1.0; };
    const auto r = integrate(f, 0, 1, o);
    EXPECT_FALSE(r.converged);
    EXPECT_LE(r.worst_lo, 0.123456);
    EXPECT_GE(r.worst_hi, 0.123456);
    EXPECT_FALSE(r.diagnostics().empty());
    EXPECT_THROW(integrate_or_throw(f, 0, 1, o), NumericalError);
}

TEST(Adaptive, Breakpoints) {
    const auto one = [](double) { return 1.0; };
    EXPECT_THROW(integrate(one, std::vector<double>{1.0}), DomainError);
    EXPECT_NEAR(integrate(one, std::vector<double>{1.0, 0.0, 0.5}).value, 1.0, 1e-15);
    EXPECT_EQ(integrate(one, 0.5, 0.5).value, 0.0);
}
