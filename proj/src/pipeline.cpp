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


#include "rqc/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>

#include "rqc/error.hpp"
#include "rqc/parallel.hpp"
#include "rqc/quadrature.hpp"

namespace rqc::pipeline {

using qsim::Matrix;

void ExperimentSpec::validate() const {
    if (n < 1) throw DomainError("N must be >= 1");
    if (m < 1) throw DomainError("M must be >= 1");
    if (trials < 1) throw DomainError("trials must be >= 1");
}

double ExperimentReport::coverage(double k) const {
    if (trials.empty()) return 0.0;
    std::int64_t hits = 0;
    for (const auto& t : trials)
        if (t.abs_error <= k * t.sigma) ++hits;
    return static_cast<double>(hits) / static_cast<double>(trials.size());
}

bool ExperimentReport::bound_dominates() const {
    return mean_ensemble_error_exact <= bound_value;
}

namespace {

TrialRecord localization_trial(int n, std::int64_t m, Rng& rng) {
    TrialRecord r;
    r.theta_true = loc::sample_theta(rng);
    r.q_true = loc::q_from_theta(r.theta_true).value();
    r.n1 = loc::simulate_trials(r.theta_true, m, rng).n1;
    const loc::PosteriorSummary s = loc::posterior_summary(r.n1, m);
    r.mu = s.mean_exact;
    r.sigma = s.sigma();
    r.abs_error = std::abs(r.mu - r.q_true);
    r.within_2sigma = r.abs_error <= 2.0 * r.sigma;
    r.ensemble_error = loc::ensemble_error_detail(r.n1, m, n, s).value;
    return r;
}

}  // namespace

ExperimentReport run_localization_experiment(const ExperimentSpec& spec, int threads) {
    spec.validate();
    ExperimentReport out;
    out.spec = spec;
    out.trials.resize(static_cast<std::size_t>(spec.trials));
    parallel_for(out.trials.size(), threads, [&](std::size_t i) {
        Rng rng = Rng::stream(spec.seed, i);
        out.trials[i] = localization_trial(spec.n, spec.m, rng);
    });

    std::int64_t covered = 0, above = 0;
    double abs_sum = 0.0, ens_sum = 0.0;
    for (const auto& t : out.trials) {
        if (t.within_2sigma) ++covered;
        if (2 * t.n1 > spec.m) ++above;
        abs_sum += t.abs_error;
        ens_sum += t.ensemble_error;
    }
    const double count = static_cast<double>(spec.trials);
    out.coverage_2sigma = static_cast<double>(covered) / count;
    out.fraction_n1_above_half = static_cast<double>(above) / count;
    out.mean_abs_error = abs_sum / count;
    out.mean_ensemble_error_exact = ens_sum / count;
    out.bound_value = loc::ensemble_error_bound(spec.n, spec.m);
    return out;
}

Matrix twirl_exact(const Matrix& rho, int n_qubits, int* points) {
    qsim::check_register(n_qubits);
    // Matrix elements of U^{⊗k} ρ U^{†⊗k} are trigonometric polynomials of
    // degree <= k in α and γ, and polynomials of degree <= k in cos β once
    // the angular averages are taken.
    const int p = 2 * n_qubits + 2;
    const auto& rule = quad::GaussLegendreRule::get(2 * n_qubits + 2);
    const double two_pi = 2.0 * std::numbers::pi;
    Matrix acc = Matrix::Zero(rho.rows(), rho.cols());
    int count = 0;
    for (std::size_t ib = 0; ib < rule.nodes.size(); ++ib) {
        const double beta = std::acos(rule.nodes[ib]);
        const double wb = rule.weights[ib] / 2.0;
        for (int ia = 0; ia < p; ++ia) {
            for (int ig = 0; ig < p; ++ig) {
                const Matrix u = qsim::euler_unitary(two_pi * ia / p, beta, two_pi * ig / p);
                acc += (wb / (p * p)) * qsim::apply_collective_unitary(rho, n_qubits, u);
                ++count;
            }
        }
    }
    if (points) *points = count;
    return acc;
}

Matrix twirl_monte_carlo(const Matrix& rho, int n_qubits, int samples, Rng& rng, double* standard_error) {
    qsim::check_register(n_qubits);
    if (samples < 2) throw DomainError("Haar twirl needs at least 2 samples");
    Matrix sum = Matrix::Zero(rho.rows(), rho.cols());
    Eigen::MatrixXd sum_sq = Eigen::MatrixXd::Zero(rho.rows(), rho.cols());
    for (int s = 0; s < samples; ++s) {
        const Matrix x = qsim::apply_collective_unitary(rho, n_qubits, qsim::haar_random_unitary(rng));
        sum += x;
        sum_sq += x.cwiseAbs2();
    }
    const double n = samples;
    const Matrix mean = sum / n;
    if (standard_error) {
        const Eigen::MatrixXd var = (sum_sq / n - mean.cwiseAbs2()).cwiseMax(0.0) * (n / (n - 1.0));
        *standard_error = std::sqrt(var.maxCoeff() / n);
    }
    return mean;
}

qsim::DensityOperator predicted_localized_state(int n, int n1, int m, Rng& rng, const TinyExactOptions& options,
                                                double* standard_error) {
    if (n < 1) throw DomainError("N must be >= 1");
    if (m < 0 || n1 < 0 || n1 > m) throw DomainError("need 0 <= n1 <= M");
    if (options.theta_nodes < 2) throw DomainError("theta_nodes must be >= 2");
    const int k = 2 * n;
    qsim::check_register(k);

    const Eigen::Index half = Eigen::Index{1} << n;
    // |0⟩^{⊗N} on the low qubits: only the index 0 of the low factor.
    const auto& rule = quad::GaussLegendreRule::get(options.theta_nodes);
    Matrix y = Matrix::Zero(half * half, half * half);
    double z = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double theta = std::numbers::pi / 2.0 * (rule.nodes[i] + 1.0);
        const double q = (3.0 + std::cos(theta)) / 4.0;
        const double w = rule.weights[i] * std::sin(theta) / 2.0 * std::pow(q, n1) * std::pow(1.0 - q, m - n1);
        if (w == 0.0) continue;
        const qsim::Vector psi = qsim::pure_qubit(theta).amplitudes();
        qsim::Vector v = qsim::Vector::Ones(1);
        for (int j = 0; j < n; ++j) {
            qsim::Vector next(v.size() * 2);
            next.head(v.size()) = psi(0) * v;
            next.tail(v.size()) = psi(1) * v;
            v = std::move(next);
        }
        // High factor = B. Basis index = b * half + a with a = 0.
        for (Eigen::Index r = 0; r < half; ++r)
            for (Eigen::Index c = 0; c < half; ++c) y(r * half, c * half) += w * v(r) * std::conj(v(c));
        z += w;
    }
    if (!(z > 0.0)) throw NumericalError("predicted ensemble has zero weight");
    y /= z;

    Matrix twirled;
    if (options.twirl == TwirlMethod::EulerCubature) {
        twirled = twirl_exact(y, k);
        if (standard_error) *standard_error = 0.0;
    } else {
        twirled = twirl_monte_carlo(y, k, options.haar_samples, rng, standard_error);
    }
    return qsim::DensityOperator(k, std::move(twirled));
}

TinyExactResult tiny_exact_localization(int n, int m, Rng& rng, const TinyExactOptions& options) {
    if (n < 1) throw DomainError("N must be >= 1");
    if (m < 0) throw DomainError("M must be >= 0");
    const int per_source = n + m;
    const int total = 2 * per_source;
    if (total > qsim::kMaxQubits)
        throw CapacityError("2(N+M) = " + std::to_string(total) + " exceeds the " +
                            std::to_string(qsim::kMaxQubits) + "-qubit simulator cap");

    TinyExactResult out;
    out.n = n;
    out.m = m;
    out.theta_nodes = options.theta_nodes;
    if (options.twirl == TwirlMethod::EulerCubature) {
        twirl_exact(Matrix::Zero(1 << (2 * n), 1 << (2 * n)), 2 * n, &out.twirl_points);
        out.twirl_description = "euler-cubature";
    } else {
        out.twirl_points = options.haar_samples;
        out.twirl_description = "haar-monte-carlo";
    }

    const qsim::DensityOperator start = qsim::rho_sym(per_source).tensor(qsim::rho_sym(per_source));
    std::vector<int> measured;
    for (int i = 0; i < m; ++i) {
        measured.push_back(n + i);
        measured.push_back(per_source + n + i);
    }
    std::sort(measured.begin(), measured.end());

    std::map<int, qsim::DensityOperator> predicted;
    std::string path;
    std::function<void(const Matrix&, int)> descend = [&](const Matrix& rho, int level) {
        if (level == m) {
            const double p = rho.trace().real();
            if (p < qsim::kImpossibleProbability) return;
            const int n1 = static_cast<int>(std::count(path.begin(), path.end(), 'T'));
            auto it = predicted.find(n1);
            if (it == predicted.end()) {
                double se = 0.0;
                it = predicted.emplace(n1, predicted_localized_state(n, n1, m, rng, options, &se)).first;
                out.twirl_standard_error = std::max(out.twirl_standard_error, se);
            }
            Matrix reduced = measured.empty() ? rho : qsim::partial_trace_matrix(rho, total, measured);
            TinyOutcome o{path, n1, p, 2.0 * to_double(loc::t_integral(n1, m - n1)), 0.0,
                          qsim::DensityOperator(2 * n, reduced / p), it->second};
            o.distance = qsim::trace_distance(o.simulated, o.predicted);
            out.outcomes.push_back(std::move(o));
            return;
        }
        const qsim::QubitPair pair{n + level, per_source + n + level};
        for (const auto& [tag, ch] : {std::pair{qsim::Outcome::Triplet, 'T'}, std::pair{qsim::Outcome::Singlet, 'S'}}) {
            Matrix next = rho;
            qsim::project_pair_in_place(next, total, pair, tag);
            path.push_back(ch);
            descend(next, level + 1);
            path.pop_back();
        }
    };
    descend(start.matrix(), 0);

    for (const auto& o : out.outcomes) {
        out.distance += o.probability * o.distance;
        out.max_distance = std::max(out.max_distance, o.distance);
    }
    return out;
}

double fit_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw DomainError("slope fit needs at least two points");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if (sxx == 0.0) throw DomainError("slope fit needs distinct abscissae");
    return sxy / sxx;
}

namespace {

// Mean of per-group slopes; groups with fewer than two distinct x are skipped.
double grouped_slope(const std::vector<std::vector<std::pair<double, double>>>& groups) {
    double total = 0.0;
    int used = 0;
    for (const auto& g : groups) {
        std::vector<double> x, y;
        for (const auto& [a, b] : g) {
            x.push_back(a);
            y.push_back(b);
        }
        if (x.size() < 2 || *std::min_element(x.begin(), x.end()) == *std::max_element(x.begin(), x.end()))
            continue;
        total += fit_slope(x, y);
        ++used;
    }
    return used ? total / used : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

SweepResult scaling_sweep(std::span<const int> n_values, std::span<const double> epsilon_values, std::int64_t trials,
                          std::uint64_t seed, int threads) {
    if (n_values.empty() || epsilon_values.empty()) throw DomainError("sweep needs nonempty N and epsilon lists");
    if (trials < 1) throw DomainError("trials must be >= 1");
    SweepResult out;
    out.trials = trials;
    std::vector<std::vector<std::pair<double, double>>> by_eps_n(epsilon_values.size()),
        by_eps_n1(epsilon_values.size()), by_n_eps2(n_values.size()), by_n_eps(n_values.size());
    std::uint64_t row_index = 0;
    for (std::size_t i = 0; i < n_values.size(); ++i) {
        for (std::size_t j = 0; j < epsilon_values.size(); ++j, ++row_index) {
            SweepRow row;
            row.n = n_values[i];
            row.epsilon = epsilon_values[j];
            row.log_required_m = loc::log_required_m(row.n, row.epsilon);
            try {
                row.required_m = loc::required_m(row.n, row.epsilon);
            } catch (const CapacityError&) {
                row.capacity_exceeded = true;
            }
            if (!row.capacity_exceeded) {
                row.bound = loc::ensemble_error_bound(row.n, row.required_m);
                const ExperimentReport r =
                    run_localization_experiment({row.n, row.required_m, trials, seed + row_index}, threads);
                row.empirical_error = r.mean_ensemble_error_exact;
                row.coverage_2sigma = r.coverage_2sigma;
            } else {
                row.bound = std::numeric_limits<double>::quiet_NaN();
                row.empirical_error = std::numeric_limits<double>::quiet_NaN();
                row.coverage_2sigma = std::numeric_limits<double>::quiet_NaN();
            }
            const double ln = std::log(static_cast<double>(row.n));
            const double ln1 = std::log(static_cast<double>(row.n - 1));
            const double le = std::log(1.0 / row.epsilon);
            by_eps_n[j].emplace_back(ln, row.log_required_m);
            by_eps_n1[j].emplace_back(ln1, row.log_required_m);
            by_n_eps2[i].emplace_back(2.0 * le, row.log_required_m);
            by_n_eps[i].emplace_back(le, row.log_required_m);
            out.rows.push_back(row);
        }
    }
    out.slope_vs_n = grouped_slope(by_eps_n);
    out.slope_vs_n_minus_1 = grouped_slope(by_eps_n1);
    out.slope_vs_inv_eps_sq = grouped_slope(by_n_eps2);
    out.slope_vs_inv_eps = grouped_slope(by_n_eps);
    return out;
}

EndToEndReport end_to_end(int n, std::int64_t m, std::uint64_t seed, const EndToEndOptions& options) {
    if (n < 1) throw DomainError("N must be >= 1");
    if (m < 1) throw DomainError("M must be >= 1");
    if (options.measurements_per_step < 1) throw DomainError("measurements per step must be >= 1");
    constexpr std::int64_t kMaxTarget = 20000;
    if (n + m > kMaxTarget)
        throw CapacityError("N+M = " + std::to_string(n + m) + " exceeds the walk limit " +
                            std::to_string(kMaxTarget));

    EndToEndReport out;
    out.n = n;
    out.m = m;
    out.seed = seed;
    out.measurements_per_step = options.measurements_per_step;
    out.target_k = static_cast<int>(n + m);

    Rng rng_a = Rng::stream(seed, 0);
    Rng rng_b = Rng::stream(seed, 1);
    out.source_a = growth::grow_with_restarts(out.target_k, rng_a);
    out.source_b = growth::grow_with_restarts(out.target_k, rng_b);
    if (!out.source_a.succeeded || !out.source_b.succeeded)
        throw NumericalError("growth did not reach the target within the attempt limit");

    out.total_walk_steps = out.source_a.total_steps + out.source_b.total_steps;
    out.total_qubits_consumed = out.source_a.qubits_consumed + out.source_b.qubits_consumed;
    out.total_st_measurements = out.total_walk_steps * options.measurements_per_step + m;

    Rng rng_loc = Rng::stream(seed, 2);
    out.localization = localization_trial(n, m, rng_loc);
    out.bound_value = loc::ensemble_error_bound(n, m);

    out.expected_steps_per_attempt = growth::expected_steps_formula(out.target_k);
    out.success_probability = growth::absorption_probability_formula(out.target_k);
    const double per_source = to_double(out.expected_steps_per_attempt / out.success_probability);
    out.expected_total_steps = 2.0 * per_source;
    out.expected_st_measurements =
        out.expected_total_steps * options.measurements_per_step + static_cast<double>(m);
    return out;
}

}  // namespace rqc::pipeline
