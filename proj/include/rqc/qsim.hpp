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

// Dense exact simulation of a handful of qubits: pure and mixed states,
// singlet/triplet projectors, symmetric-subspace projectors, partial trace
// and trace distance.
//
// Qubit 0 is the least significant bit of a computational-basis index.
// Trace distance is the full trace norm of the difference (orthogonal pure
// states are at distance 2).

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "rqc/rng.hpp"

namespace rqc::qsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Largest register the dense routines accept (2^10 x 2^10 complex).
inline constexpr int kMaxQubits = 10;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kPsdTolerance = -1e-10;
inline constexpr double kIdempotentTolerance = 1e-10;
inline constexpr double kImpossibleProbability = 1e-14;

struct QubitPair {
    int first;
    int second;
};

class DensityOperator;

class StateVector {
public:
    StateVector(int n_qubits, Vector amplitudes);

    int n_qubits() const { return n_qubits_; }
    const Vector& amplitudes() const { return amplitudes_; }
    DensityOperator density() const;

private:
    int n_qubits_;
    Vector amplitudes_;
};

/// Hermitian, unit-trace matrix on n qubits. Construction checks Hermiticity
/// and trace; positivity is checked by check_invariants(), which needs a full
/// eigendecomposition.
class DensityOperator {
public:
    DensityOperator(int n_qubits, Matrix matrix);

    static DensityOperator maximally_mixed(int n_qubits);

    int n_qubits() const { return n_qubits_; }
    Eigen::Index dim() const { return matrix_.rows(); }
    const Matrix& matrix() const { return matrix_; }

    double purity() const;
    double min_eigenvalue() const;
    /// Throws DomainError naming the first violated invariant.
    void check_invariants() const;

    /// this ⊗ high: `this` occupies the low qubits.
    DensityOperator tensor(const DensityOperator& high) const;

private:
    int n_qubits_;
    Matrix matrix_;
};

class Projector {
public:
    Projector(int n_qubits, Matrix matrix);

    int n_qubits() const { return n_qubits_; }
    const Matrix& matrix() const { return matrix_; }
    /// Rank from the trace (exact for a projector up to rounding).
    int rank() const;
    Projector complement() const;

private:
    int n_qubits_;
    Matrix matrix_;
};

enum class Outcome { Singlet, Triplet };

struct MeasurementOutcome {
    Outcome tag;
    double probability;
};

struct MeasurementResult {
    MeasurementOutcome outcome;
    DensityOperator post_state;
};

/// cos(θ/2)|0⟩ + sin(θ/2)|1⟩ for θ in [0, π].
StateVector pure_qubit(double theta);

Projector singlet_projector(QubitPair pair, int n_qubits);
Projector triplet_projector(QubitPair pair, int n_qubits);

/// Projector onto span of the n+1 Dicke states.
Projector symmetric_projector(int n_qubits);
/// Maximally mixed state on the symmetric subspace.
DensityOperator rho_sym(int n_qubits);

double outcome_probability(const DensityOperator& state, QubitPair pair, Outcome outcome);

/// Non-destructive singlet/triplet measurement. With `forced`, the outcome is
/// postselected and its Born probability reported.
MeasurementResult measure_st(const DensityOperator& state, QubitPair pair, std::optional<Outcome> forced, Rng& rng);

/// P ρ P (unnormalized) for the s/t projector on `pair`; trace is the Born
/// probability. Works in place in O(4^n).
void project_pair_in_place(Matrix& rho, int n_qubits, QubitPair pair, Outcome outcome);

DensityOperator partial_trace_discard(const DensityOperator& state, std::span<const int> qubits);
/// Same, on a raw (possibly unnormalized) matrix; returns the reduced matrix.
Matrix partial_trace_matrix(const Matrix& rho, int n_qubits, std::span<const int> qubits);

double trace_distance(const DensityOperator& a, const DensityOperator& b);
/// Sum of |eigenvalues| of a Hermitian matrix.
double trace_norm(const Matrix& hermitian);

/// Haar-random element of U(2) (unit quaternion from four normals).
Matrix haar_random_unitary(Rng& rng);
/// Rz(α) Ry(β) Rz(γ).
Matrix euler_unitary(double alpha, double beta, double gamma);
/// U^{⊗n} ρ U^{†⊗n} for a 2x2 unitary.
Matrix apply_collective_unitary(const Matrix& rho, int n_qubits, const Matrix& u);

Matrix swap_operator(int a, int b, int n_qubits);
/// high ⊗ low with `low` on the low-order qubits.
Matrix kron(const Matrix& high, const Matrix& low);

void check_register(int n_qubits);
void check_pair(QubitPair pair, int n_qubits);

}  // namespace rqc::qsim
