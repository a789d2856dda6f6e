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

#include <functional>
#include <string>
#include <vector>

namespace rqc::quad {

/// n-point Gauss-Legendre rule on [-1, 1]; nodes ascending.
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    static const GaussLegendreRule& get(int n);
};

struct QuadratureOptions {
    double abs_tol = 1e-10;
    double rel_tol = 0.0;
    int order = 20;
    int max_panels = 50000;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int panels = 0;
    int evaluations = 0;
    bool converged = false;
    /// Worst unresolved subinterval when not converged.
    double worst_lo = 0.0, worst_hi = 0.0;

    std::string diagnostics() const;
};

/// Fixed-order rule on [a, b].
double gauss_legendre(const std::function<double(double)>& f, double a, double b, int order);

/// Globally adaptive bisection. A panel's error is the disagreement between
/// its order-n estimate and the sum over its halves; the worst panel is
/// split until the total error is below max(abs_tol, rel_tol·|value|).
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options = {});

/// As integrate(), split at the given interior breakpoints.
QuadratureResult integrate(const std::function<double(double)>& f, std::vector<double> breakpoints,
                           const QuadratureOptions& options = {});

/// Throws NumericalError carrying diagnostics on non-convergence.
double integrate_or_throw(const std::function<double(double)>& f, double a, double b,
                          const QuadratureOptions& options = {});

}  // namespace rqc::quad
