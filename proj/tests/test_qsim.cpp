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
#include <vector>

#include <gtest/gtest.h>

#include "property.hpp"
#include "rqc/error.hpp"
#include "rqc/qsim.hpp"

using namespace rqc;
using namespace rqc::qsim;

namespace {

Matrix random_density(int n, prop::Gen& g) {
    const auto d = Eigen::Index{1} << n;
    Matrix a(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) a(i, j) = Complex(g.real(-1, 1), g.real(-1, 1));
    Matrix rho = a * a.adjoint();
    return rho / rho.trace().real();
}

// Dense operator for U acting on every qubit.
Matrix dense_collective(const Matrix& u, int n) {
    Matrix out = u;
    for (int i = 1; i < n; ++i) out = kron(u, out);
    return out;
}

}  // namespace

TEST(Qsim, TwoQubitSymmetricStateByHand) {
    // ρ_sym(2) = (I - |s⟩⟨s|)/3 with |s⟩ = (|01⟩ - |10⟩)/√2.
    Matrix expect = Matrix::Identity(4, 4);
    expect(1, 1) -= 0.5;
    expect(2, 2) -= 0.5;
    expect(1, 2) += 0.5;
    expect(2, 1) += 0.5;
    expect /= 3.0;
    EXPECT_LT((rho_sym(2).matrix() - expect).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Qsim, RhoSymInvariants) {
    for (int n = 1; n <= 8; ++n) {
        const auto rho = rho_sym(n);
        EXPECT_NO_THROW(rho.check_invariants());
        EXPECT_NEAR(rho.purity(), 1.0 / (n + 1), 1e-12);
        EXPECT_EQ(symmetric_projector(n).rank(), n + 1);
    }
}

TEST(Qsim, SinglePairProjectorsByHand) {
    const auto s = singlet_projector({0, 1}, 2);
    const auto t = triplet_projector({0, 1}, 2);
    EXPECT_EQ(s.rank(), 1);
    EXPECT_EQ(t.rank(), 3);
    EXPECT_LT((s.matrix() + t.matrix() - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((s.matrix() * s.matrix() - s.matrix()).cwiseAbs().maxCoeff(), 1e-15);
    // |01⟩ has singlet weight 1/2.
    Vector v = Vector::Zero(4);
    v(1) = 1.0;
    EXPECT_NEAR(outcome_probability(StateVector(2, v).density(), {0, 1}, Outcome::Singlet), 0.5, 1e-15);
}

TEST(Qsim, ProductStateTripletProbabilityMatchesOverlapFormula) {
    // |0⟩|θ⟩ yields a triplet with probability (3 + cos θ)/4.
    for (double theta : {0.0, 0.3, 1.0, 2.0, std::numbers::pi}) {
        const auto rho = pure_qubit(0.0).density().tensor(pure_qubit(theta).density());
        EXPECT_NEAR(outcome_probability(rho, {0, 1}, Outcome::Triplet), (3 + std::cos(theta)) / 4, 1e-14);
    }
}

TEST(Qsim, ImpossibleOutcomeRaises) {
    Vector v = Vector::Zero(4);
    v(0) = 1.0;
    Rng rng(1);
    EXPECT_THROW(measure_st(StateVector(2, v).density(), {0, 1}, Outcome::Singlet, rng), ImpossibleOutcomeError);
}

TEST(Qsim, RegisterLimits) {
    EXPECT_THROW(rho_sym(0), DomainError);
    EXPECT_THROW(rho_sym(kMaxQubits + 1), CapacityError);
    EXPECT_THROW(partial_trace_discard(rho_sym(2), std::vector<int>{0, 1}), DomainError);
    EXPECT_THROW(check_pair({1, 1}, 3), DomainError);
    EXPECT_THROW(check_pair({0, 3}, 3), DomainError);
}

TEST(Qsim, RejectsBadDensityMatrices) {
    Matrix m = Matrix::Identity(2, 2);
    EXPECT_THROW(DensityOperator(1, m), DomainError);  // trace 2
    m = Matrix::Identity(2, 2) / 2.0;
    m(0, 1) = 0.1;
    EXPECT_THROW(DensityOperator(1, m), DomainError);  // not Hermitian
    Matrix neg(2, 2);
    neg << 1.5, 0, 0, -0.5;
    EXPECT_THROW(DensityOperator(1, neg).check_invariants(), DomainError);
}

TEST(Qsim, OrthogonalPureStatesAtDistanceTwo) {
    EXPECT_NEAR(trace_distance(pure_qubit(0.0).density(), pure_qubit(std::numbers::pi).density()), 2.0, 1e-12);
}

TEST(Qsim, PureStateDistanceGrid) {
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) {
            const double a = std::numbers::pi * i / 9, b = std::numbers::pi * j / 9;
            EXPECT_NEAR(trace_distance(pure_qubit(a).density(), pure_qubit(b).density()),
                        2 * std::sin(std::abs(a - b) / 2), 1e-10);
        }
}

TEST(Qsim, PartialTraceOfProduct) {
    const auto a = pure_qubit(0.7).density();
    const auto b = pure_qubit(2.1).density();
    const auto ab = a.tensor(b);  // a on qubit 0
    const std::vector<int> drop_high{1}, drop_low{0};
    EXPECT_LT((partial_trace_discard(ab, drop_high).matrix() - a.matrix()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((partial_trace_discard(ab, drop_low).matrix() - b.matrix()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Qsim, PartialTraceOfRhoSymIsRhoSym) {
    for (int n = 2; n <= 7; ++n) {
        const std::vector<int> drop{n / 2};
        EXPECT_LT(trace_distance(partial_trace_discard(rho_sym(n), drop), rho_sym(n - 1)), 1e-12);
    }
}

TEST(QsimProperty, SymmetricProjectorCommutesWithAdjacentSwaps) {
    for (int n = 2; n <= 6; ++n) {
        const Matrix p = symmetric_projector(n).matrix();
        for (int a = 0; a + 1 < n; ++a) {
            const Matrix s = swap_operator(a, a + 1, n);
            EXPECT_LT((p * s - s * p).cwiseAbs().maxCoeff(), 1e-12);
        }
    }
}

TEST(QsimProperty, RhoSymRotationInvariant) {
    prop::for_all(20, 101, [](prop::Gen& g, int) {
        const Matrix u = haar_random_unitary(g.rng());
        EXPECT_LT((u * u.adjoint() - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-14);
        for (int n = 1; n <= 5; ++n) {
            const auto rho = rho_sym(n);
            const DensityOperator rotated(n, apply_collective_unitary(rho.matrix(), n, u));
            EXPECT_LT(trace_distance(rho, rotated), 1e-10);
        }
    });
}

TEST(QsimProperty, StructuredCollectiveUnitaryMatchesDense) {
    prop::for_all(10, 102, [](prop::Gen& g, int) {
        const int n = static_cast<int>(g.integer(1, 4));
        const Matrix rho = random_density(n, g);
        const Matrix u = euler_unitary(g.real(0, 6.3), g.real(0, 3.2), g.real(0, 6.3));
        const Matrix big = dense_collective(u, n);
        EXPECT_LT((apply_collective_unitary(rho, n, u) - big * rho * big.adjoint()).cwiseAbs().maxCoeff(), 1e-13);
    });
}

TEST(QsimProperty, StructuredProjectionMatchesDense) {
    prop::for_all(30, 103, [](prop::Gen& g, int) {
        const int n = static_cast<int>(g.integer(2, 5));
        const int a = static_cast<int>(g.integer(0, n - 1));
        int b = static_cast<int>(g.integer(0, n - 2));
        if (b >= a) ++b;
        const Outcome o = g.coin() ? Outcome::Singlet : Outcome::Triplet;
        Matrix rho = random_density(n, g);
        const Matrix p = (o == Outcome::Singlet ? singlet_projector({a, b}, n) : triplet_projector({a, b}, n)).matrix();
        const Matrix dense = p * rho * p;
        project_pair_in_place(rho, n, {a, b}, o);
        EXPECT_LT((rho - dense).cwiseAbs().maxCoeff(), 1e-14);
    });
}

TEST(QsimProperty, OutcomeProbabilitiesSumToOne) {
    prop::for_all(50, 104, [](prop::Gen& g, int) {
        const int n = static_cast<int>(g.integer(2, 6));
        const DensityOperator rho(n, random_density(n, g));
        const QubitPair pair{0, static_cast<int>(g.integer(1, n - 1))};
        const double s = outcome_probability(rho, pair, Outcome::Singlet);
        const double t = outcome_probability(rho, pair, Outcome::Triplet);
        EXPECT_NEAR(s + t, 1.0, 1e-12);
        Rng rng = g.rng();
        const auto r = measure_st(rho, pair, std::nullopt, rng);
        EXPECT_NO_THROW(r.post_state.check_invariants());
    });
}

TEST(QsimProperty, PartialTracePreservesInvariants) {
    prop::for_all(30, 105, [](prop::Gen& g, int) {
        const int n = static_cast<int>(g.integer(2, 6));
        const DensityOperator rho(n, random_density(n, g));
        std::vector<int> drop;
        for (int q = 0; q < n; ++q)
            if (g.coin()) drop.push_back(q);
        if (static_cast<int>(drop.size()) == n) drop.pop_back();
        const auto reduced = partial_trace_discard(rho, drop);
        EXPECT_EQ(reduced.n_qubits(), n - static_cast<int>(drop.size()));
        EXPECT_NO_THROW(reduced.check_invariants());
    });
}
