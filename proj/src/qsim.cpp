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


#include "rqc/qsim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "rqc/error.hpp"
#include "rqc/rational.hpp"

namespace rqc::qsim {

namespace {

Eigen::Index dim_of(int n_qubits) { return Eigen::Index{1} << n_qubits; }

double max_hermitian_defect(const Matrix& m) { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }

}  // namespace

void check_register(int n_qubits) {
    if (n_qubits < 1) throw DomainError("register needs at least one qubit, got " + std::to_string(n_qubits));
    if (n_qubits > kMaxQubits)
        throw CapacityError("register of " + std::to_string(n_qubits) + " qubits exceeds the dense cap of " +
                            std::to_string(kMaxQubits));
}

void check_pair(QubitPair pair, int n_qubits) {
    if (pair.first == pair.second || pair.first < 0 || pair.second < 0 || pair.first >= n_qubits ||
        pair.second >= n_qubits)
        throw DomainError("invalid qubit pair (" + std::to_string(pair.first) + ", " + std::to_string(pair.second) +
                          ") on " + std::to_string(n_qubits) + " qubits");
}

StateVector::StateVector(int n_qubits, Vector amplitudes) : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
    check_register(n_qubits_);
    if (amplitudes_.size() != dim_of(n_qubits_)) throw DomainError("amplitude vector has the wrong length");
    if (std::fabs(amplitudes_.squaredNorm() - 1.0) > kNormTolerance)
        throw DomainError("state vector is not normalized");
}

DensityOperator StateVector::density() const { return DensityOperator(n_qubits_, amplitudes_ * amplitudes_.adjoint()); }

DensityOperator::DensityOperator(int n_qubits, Matrix matrix) : n_qubits_(n_qubits), matrix_(std::move(matrix)) {
    check_register(n_qubits_);
    if (matrix_.rows() != dim_of(n_qubits_) || matrix_.cols() != dim_of(n_qubits_))
        throw DomainError("density matrix has the wrong shape for " + std::to_string(n_qubits_) + " qubits");
    if (max_hermitian_defect(matrix_) > kHermitianTolerance) throw DomainError("density matrix is not Hermitian");
    const Complex tr = matrix_.trace();
    if (std::fabs(tr.real() - 1.0) > kTraceTolerance || std::fabs(tr.imag()) > kTraceTolerance)
        throw DomainError("density matrix trace is " + std::to_string(tr.real()) + ", expected 1");
    matrix_ = (matrix_ + matrix_.adjoint().eval()) * 0.5;
}

DensityOperator DensityOperator::maximally_mixed(int n_qubits) {
    check_register(n_qubits);
    const auto d = dim_of(n_qubits);
    return DensityOperator(n_qubits, Matrix::Identity(d, d) / static_cast<double>(d));
}

double DensityOperator::purity() const { return (matrix_ * matrix_).trace().real(); }

double DensityOperator::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Matrix> es(matrix_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

void DensityOperator::check_invariants() const {
    if (max_hermitian_defect(matrix_) > kHermitianTolerance) throw DomainError("density matrix is not Hermitian");
    if (std::fabs(matrix_.trace().real() - 1.0) > kTraceTolerance) throw DomainError("density matrix trace != 1");
    const double lo = min_eigenvalue();
    if (lo < kPsdTolerance) throw DomainError("density matrix has eigenvalue " + std::to_string(lo));
}

DensityOperator DensityOperator::tensor(const DensityOperator& high) const {
    return DensityOperator(n_qubits_ + high.n_qubits_, kron(high.matrix_, matrix_));
}

Projector::Projector(int n_qubits, Matrix matrix) : n_qubits_(n_qubits), matrix_(std::move(matrix)) {
    check_register(n_qubits_);
    if (matrix_.rows() != dim_of(n_qubits_) || matrix_.cols() != dim_of(n_qubits_))
        throw DomainError("projector has the wrong shape");
}

int Projector::rank() const { return static_cast<int>(std::lround(matrix_.trace().real())); }

Projector Projector::complement() const {
    const auto d = matrix_.rows();
    return Projector(n_qubits_, Matrix::Identity(d, d) - matrix_);
}

StateVector pure_qubit(double theta) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi))
        throw DomainError("pure_qubit angle must lie in [0, pi], got " + std::to_string(theta));
    Vector v(2);
    v << Complex(std::cos(theta / 2), 0.0), Complex(std::sin(theta / 2), 0.0);
    return StateVector(1, v);
}

Projector singlet_projector(QubitPair pair, int n_qubits) {
    check_register(n_qubits);
    check_pair(pair, n_qubits);
    const auto d = dim_of(n_qubits);
    const Eigen::Index a = Eigen::Index{1} << pair.first;
    const Eigen::Index b = Eigen::Index{1} << pair.second;
    Matrix p = Matrix::Zero(d, d);
    // Only |first=1,second=0⟩ and |first=0,second=1⟩ carry singlet weight.
    for (Eigen::Index r = 0; r < d; ++r) {
        if (r & (a | b)) continue;
        const Eigen::Index x = r | a;
        const Eigen::Index y = r | b;
        p(x, x) = 0.5;
        p(y, y) = 0.5;
        p(x, y) = -0.5;
        p(y, x) = -0.5;
    }
    return Projector(n_qubits, std::move(p));
}

Projector triplet_projector(QubitPair pair, int n_qubits) { return singlet_projector(pair, n_qubits).complement(); }

Projector symmetric_projector(int n_qubits) {
    check_register(n_qubits);
    const auto d = dim_of(n_qubits);
    std::vector<double> inv_weight_count(static_cast<std::size_t>(n_qubits) + 1);
    for (int w = 0; w <= n_qubits; ++w) inv_weight_count[w] = 1.0 / to_double(Rational(binomial(n_qubits, w)));
    Matrix p = Matrix::Zero(d, d);
    for (Eigen::Index c = 0; c < d; ++c) {
        const int wc = std::popcount(static_cast<std::uint64_t>(c));
        for (Eigen::Index r = 0; r < d; ++r)
            if (std::popcount(static_cast<std::uint64_t>(r)) == wc) p(r, c) = inv_weight_count[wc];
    }
    return Projector(n_qubits, std::move(p));
}

DensityOperator rho_sym(int n_qubits) {
    Projector p = symmetric_projector(n_qubits);
    return DensityOperator(n_qubits, p.matrix() / static_cast<double>(n_qubits + 1));
}

double outcome_probability(const DensityOperator& state, QubitPair pair, Outcome outcome) {
    check_pair(pair, state.n_qubits());
    const Matrix& rho = state.matrix();
    const Eigen::Index a = Eigen::Index{1} << pair.first;
    const Eigen::Index b = Eigen::Index{1} << pair.second;
    double singlet = 0.0;
    for (Eigen::Index r = 0; r < state.dim(); ++r) {
        if (r & (a | b)) continue;
        const Eigen::Index x = r | a;
        const Eigen::Index y = r | b;
        singlet += 0.5 * (rho(x, x) + rho(y, y) - rho(x, y) - rho(y, x)).real();
    }
    singlet = std::clamp(singlet, 0.0, 1.0);
    return outcome == Outcome::Singlet ? singlet : 1.0 - singlet;
}

void project_pair_in_place(Matrix& rho, int n_qubits, QubitPair pair, Outcome outcome) {
    check_pair(pair, n_qubits);
    const Eigen::Index d = rho.rows();
    const Eigen::Index a = Eigen::Index{1} << pair.first;
    const Eigen::Index b = Eigen::Index{1} << pair.second;
    const bool singlet = outcome == Outcome::Singlet;
    // In the {x=first set, y=second set} block the singlet projector is
    // [[1,-1],[-1,1]]/2; it annihilates |00⟩ and |11⟩. The triplet projector
    // is the identity minus that.
    for (Eigen::Index r = 0; r < d; ++r) {
        if (r & (a | b)) continue;
        const Eigen::Index x = r | a;
        const Eigen::Index y = r | b;
        const Eigen::Index z = r | a | b;
        for (Eigen::Index c = 0; c < d; ++c) {
            const Complex vx = rho(x, c), vy = rho(y, c);
            if (singlet) {
                const Complex h = 0.5 * (vx - vy);
                rho(x, c) = h;
                rho(y, c) = -h;
                rho(r, c) = 0.0;
                rho(z, c) = 0.0;
            } else {
                const Complex h = 0.5 * (vx + vy);
                rho(x, c) = h;
                rho(y, c) = h;
            }
        }
    }
    for (Eigen::Index c = 0; c < d; ++c) {
        if (c & (a | b)) continue;
        const Eigen::Index x = c | a;
        const Eigen::Index y = c | b;
        const Eigen::Index z = c | a | b;
        for (Eigen::Index r = 0; r < d; ++r) {
            const Complex vx = rho(r, x), vy = rho(r, y);
            if (singlet) {
                const Complex h = 0.5 * (vx - vy);
                rho(r, x) = h;
                rho(r, y) = -h;
                rho(r, c) = 0.0;
                rho(r, z) = 0.0;
            } else {
                const Complex h = 0.5 * (vx + vy);
                rho(r, x) = h;
                rho(r, y) = h;
            }
        }
    }
}

MeasurementResult measure_st(const DensityOperator& state, QubitPair pair, std::optional<Outcome> forced, Rng& rng) {
    const double p_singlet = outcome_probability(state, pair, Outcome::Singlet);
    Outcome tag;
    if (forced) {
        tag = *forced;
    } else {
        tag = rng.uniform() < p_singlet ? Outcome::Singlet : Outcome::Triplet;
    }
    const double p = tag == Outcome::Singlet ? p_singlet : 1.0 - p_singlet;
    if (p < kImpossibleProbability)
        throw ImpossibleOutcomeError(std::string(tag == Outcome::Singlet ? "singlet" : "triplet") +
                                     " outcome has probability " + std::to_string(p));
    Matrix rho = state.matrix();
    project_pair_in_place(rho, state.n_qubits(), pair, tag);
    const double tr = rho.trace().real();
    rho /= tr;
    return {{tag, p}, DensityOperator(state.n_qubits(), std::move(rho))};
}

Matrix partial_trace_matrix(const Matrix& rho, int n_qubits, std::span<const int> qubits) {
    std::vector<bool> drop(static_cast<std::size_t>(n_qubits), false);
    for (int q : qubits) {
        if (q < 0 || q >= n_qubits) throw DomainError("partial trace index " + std::to_string(q) + " out of range");
        if (drop[q]) throw DomainError("partial trace index " + std::to_string(q) + " repeated");
        drop[q] = true;
    }
    std::vector<int> kept, traced;
    for (int q = 0; q < n_qubits; ++q) (drop[q] ? traced : kept).push_back(q);
    if (kept.empty()) throw DomainError("cannot discard every qubit");

    const auto expand = [](const std::vector<int>& positions) {
        std::vector<Eigen::Index> map(std::size_t{1} << positions.size());
        for (std::size_t i = 0; i < map.size(); ++i) {
            Eigen::Index full = 0;
            for (std::size_t j = 0; j < positions.size(); ++j)
                if (i & (std::size_t{1} << j)) full |= Eigen::Index{1} << positions[j];
            map[i] = full;
        }
        return map;
    };
    const auto keep_map = expand(kept);
    const auto trace_map = expand(traced);
    const auto dk = static_cast<Eigen::Index>(keep_map.size());
    Matrix out = Matrix::Zero(dk, dk);
    for (Eigen::Index c = 0; c < dk; ++c)
        for (Eigen::Index r = 0; r < dk; ++r) {
            Complex acc = 0.0;
            for (Eigen::Index t : trace_map) acc += rho(keep_map[r] | t, keep_map[c] | t);
            out(r, c) = acc;
        }
    return out;
}

DensityOperator partial_trace_discard(const DensityOperator& state, std::span<const int> qubits) {
    Matrix reduced = partial_trace_matrix(state.matrix(), state.n_qubits(), qubits);
    const int remaining = state.n_qubits() - static_cast<int>(qubits.size());
    return DensityOperator(remaining, std::move(reduced));
}

double trace_norm(const Matrix& hermitian) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const DensityOperator& a, const DensityOperator& b) {
    if (a.n_qubits() != b.n_qubits())
        throw DomainError("trace distance between " + std::to_string(a.n_qubits()) + "- and " +
                          std::to_string(b.n_qubits()) + "-qubit states");
    return trace_norm(a.matrix() - b.matrix());
}

Matrix haar_random_unitary(Rng& rng) {
    double q[4];
    double norm = 0.0;
    do {
        norm = 0.0;
        for (double& x : q) {
            x = rng.normal();
            norm += x * x;
        }
    } while (norm < 1e-300);
    norm = std::sqrt(norm);
    for (double& x : q) x /= norm;
    Matrix u(2, 2);
    u << Complex(q[0], q[1]), Complex(q[2], q[3]), Complex(-q[2], q[3]), Complex(q[0], -q[1]);
    return u;
}

Matrix euler_unitary(double alpha, double beta, double gamma) {
    const auto rz = [](double t) {
        Matrix m = Matrix::Zero(2, 2);
        m(0, 0) = std::polar(1.0, -t / 2);
        m(1, 1) = std::polar(1.0, t / 2);
        return m;
    };
    Matrix ry(2, 2);
    ry << std::cos(beta / 2), -std::sin(beta / 2), std::sin(beta / 2), std::cos(beta / 2);
    return rz(alpha) * ry * rz(gamma);
}

Matrix apply_collective_unitary(const Matrix& rho, int n_qubits, const Matrix& u) {
    Matrix out = rho;
    const Eigen::Index d = rho.rows();
    const Complex u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
    for (int q = 0; q < n_qubits; ++q) {
        const Eigen::Index bit = Eigen::Index{1} << q;
        for (Eigen::Index r = 0; r < d; ++r) {
            if (r & bit) continue;
            for (Eigen::Index c = 0; c < d; ++c) {
                const Complex v0 = out(r, c), v1 = out(r | bit, c);
                out(r, c) = u00 * v0 + u01 * v1;
                out(r | bit, c) = u10 * v0 + u11 * v1;
            }
        }
        for (Eigen::Index c = 0; c < d; ++c) {
            if (c & bit) continue;
            for (Eigen::Index r = 0; r < d; ++r) {
                const Complex w0 = out(r, c), w1 = out(r, c | bit);
                out(r, c) = w0 * std::conj(u00) + w1 * std::conj(u01);
                out(r, c | bit) = w0 * std::conj(u10) + w1 * std::conj(u11);
            }
        }
    }
    return out;
}

Matrix swap_operator(int a, int b, int n_qubits) {
    check_register(n_qubits);
    check_pair({a, b}, n_qubits);
    const auto d = dim_of(n_qubits);
    Matrix s = Matrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        const Eigen::Index ba = (i >> a) & 1, bb = (i >> b) & 1;
        Eigen::Index j = i & ~((Eigen::Index{1} << a) | (Eigen::Index{1} << b));
        j |= (bb << a) | (ba << b);
        s(j, i) = 1.0;
    }
    return s;
}

Matrix kron(const Matrix& high, const Matrix& low) {
    const Eigen::Index dl = low.rows();
    Matrix out(high.rows() * dl, high.cols() * low.cols());
    for (Eigen::Index hc = 0; hc < high.cols(); ++hc)
        for (Eigen::Index hr = 0; hr < high.rows(); ++hr)
            out.block(hr * dl, hc * low.cols(), dl, low.cols()) = high(hr, hc) * low;
    return out;
}

}  // namespace rqc::qsim
