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


#include "rqc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "rqc/error.hpp"

namespace rqc::quad {

namespace {

GaussLegendreRule build_rule(int n) {
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-16) break;
        }
        {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

struct Panel {
    double a, b;
    double estimate;  // sum over the two halves
    double error;
    double left, right;
};

}  // namespace

const GaussLegendreRule& GaussLegendreRule::get(int n) {
    if (n < 1 || n > 512) throw DomainError("Gauss-Legendre order must lie in [1, 512]");
    static std::mutex mutex;
    static std::map<int, GaussLegendreRule> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
    return it->second;
}

double gauss_legendre(const std::function<double(double)>& f, double a, double b, int order) {
    const auto& rule = GaussLegendreRule::get(order);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return sum * half;
}

std::string QuadratureResult::diagnostics() const {
    std::ostringstream os;
    os << "value=" << value << " error_estimate=" << error_estimate << " panels=" << panels
       << " evaluations=" << evaluations << " converged=" << (converged ? "yes" : "no");
    if (!converged) os << " worst=[" << worst_lo << ", " << worst_hi << "]";
    return os.str();
}

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options) {
    return integrate(f, std::vector<double>{a, b}, options);
}

QuadratureResult integrate(const std::function<double(double)>& f, std::vector<double> breakpoints,
                           const QuadratureOptions& options) {
    if (breakpoints.size() < 2) throw DomainError("integration needs at least two breakpoints");
    std::sort(breakpoints.begin(), breakpoints.end());
    breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());
    QuadratureResult result;
    result.converged = true;
    if (breakpoints.size() < 2) return result;
    const int n = options.order;

    // Global adaptive scheme: every panel carries the order-n estimate on
    // its two halves and the disagreement with the whole-panel estimate;
    // the worst panel is split until the summed disagreement meets the
    // tolerance.
    const auto make_panel = [&](double a, double b, double coarse) {
        const double m = 0.5 * (a + b);
        const double left = gauss_legendre(f, a, m, n);
        const double right = gauss_legendre(f, m, b, n);
        result.evaluations += 2 * n;
        return Panel{a, b, left + right, std::fabs(left + right - coarse), left, right};
    };
    const auto by_error = [](const Panel& x, const Panel& y) { return x.error < y.error; };
    std::vector<Panel> heap;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        const double a = breakpoints[i], b = breakpoints[i + 1];
        const double coarse = gauss_legendre(f, a, b, n);
        result.evaluations += n;
        heap.push_back(make_panel(a, b, coarse));
    }
    std::make_heap(heap.begin(), heap.end(), by_error);

    const auto totals = [&] {
        double value = 0.0, error = 0.0;
        for (const Panel& p : heap) {
            value += p.estimate;
            error += p.error;
        }
        return std::pair{value, error};
    };
    auto [value, error] = totals();
    int since_resum = 0;
    while (error > std::max(options.abs_tol, options.rel_tol * std::fabs(value))) {
        if (static_cast<int>(heap.size()) >= options.max_panels) break;
        std::pop_heap(heap.begin(), heap.end(), by_error);
        const Panel worst = heap.back();
        heap.pop_back();
        const double m = 0.5 * (worst.a + worst.b);
        if (m <= worst.a || m >= worst.b) {
            heap.push_back(worst);
            std::push_heap(heap.begin(), heap.end(), by_error);
            break;
        }
        const Panel left = make_panel(worst.a, m, worst.left);
        const Panel right = make_panel(m, worst.b, worst.right);
        value += left.estimate + right.estimate - worst.estimate;
        error += left.error + right.error - worst.error;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end(), by_error);
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end(), by_error);
        if (++since_resum == 64) {
            std::tie(value, error) = totals();
            since_resum = 0;
        }
    }
    std::tie(value, error) = totals();
    result.value = value;
    result.error_estimate = error;
    result.panels = static_cast<int>(heap.size());
    result.converged = error <= std::max(options.abs_tol, options.rel_tol * std::fabs(value)) && std::isfinite(value);
    if (!result.converged && !heap.empty()) {
        const Panel& worst = *std::max_element(heap.begin(), heap.end(), by_error);
        result.worst_lo = worst.a;
        result.worst_hi = worst.b;
    }
    return result;
}

double integrate_or_throw(const std::function<double(double)>& f, double a, double b,
                          const QuadratureOptions& options) {
    const QuadratureResult r = integrate(f, a, b, options);
    if (!r.converged) throw NumericalError("quadrature did not converge: " + r.diagnostics());
    return r.value;
}

}  // namespace rqc::quad
