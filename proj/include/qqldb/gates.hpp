// Copyright 2026 The qqldb Authors
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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace qqldb {

using Amplitude = std::complex<double>;
using Qubit = unsigned;
using BasisIndex = std::uint64_t;

/// Largest register (in qubits) for which dense matrices are built. Dense
/// matrices are a verification path; execution goes through stride kernels.
inline constexpr unsigned kDenseQubitLimit = 10;
inline constexpr double kUnitaryTolerance = 1e-10;

/// Square complex matrix of size 2^k x 2^k, row-major. No unitarity implied.
class Matrix {
public:
    Matrix() = default;
    /// Zero matrix over `num_qubits` qubits.
    explicit Matrix(unsigned num_qubits);
    Matrix(unsigned num_qubits, std::vector<Amplitude> entries);

    static Matrix identity(unsigned num_qubits);

    unsigned num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return dim_; }

    Amplitude operator()(std::size_t row, std::size_t col) const { return entries_[row * dim_ + col]; }
    Amplitude& operator()(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }
    std::span<const Amplitude> entries() const { return entries_; }

    Matrix adjoint() const;
    std::vector<Amplitude> apply(std::span<const Amplitude> vec) const;
    double max_abs_diff(const Matrix& other) const;

    friend Matrix operator*(const Matrix& lhs, const Matrix& rhs);
    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    unsigned num_qubits_ = 0;
    std::size_t dim_ = 1;
    std::vector<Amplitude> entries_{Amplitude{1.0, 0.0}};
};

/// Kronecker product; `lhs` acts on the leading (more significant) qubits.
Matrix kron(const Matrix& lhs, const Matrix& rhs);

/// Max elementwise deviation of U U^dagger from I, compared against `tol`.
bool is_unitary(const Matrix& m, double tol = kUnitaryTolerance);

namespace detail {
struct GateAccess;
}

/// A dense matrix that has been checked to be unitary. Immutable.
class GateMatrix {
public:
    /// Throws ErrorKind::Validation if `m` is not unitary within `tol`.
    explicit GateMatrix(Matrix m, double tol = kUnitaryTolerance);

    const Matrix& matrix() const { return m_; }
    unsigned num_qubits() const { return m_.num_qubits(); }
    std::size_t dim() const { return m_.dim(); }
    Amplitude operator()(std::size_t row, std::size_t col) const { return m_(row, col); }

    GateMatrix adjoint() const;

    // Products of unitaries are unitary, so this skips revalidation.
    friend GateMatrix operator*(const GateMatrix& lhs, const GateMatrix& rhs);
    friend bool operator==(const GateMatrix&, const GateMatrix&) = default;

private:
    friend struct detail::GateAccess;
    struct Trusted {};
    GateMatrix(Trusted, Matrix m) : m_(std::move(m)) {}

    Matrix m_;
};

GateMatrix identity_gate(unsigned num_qubits = 1);
GateMatrix not_gate();
GateMatrix hadamard_gate();

/// `u` acts on the leading qubits, `v` on the trailing ones.
GateMatrix tensor_gates(const GateMatrix& lhs, const GateMatrix& rhs);

/// U -> U (x) |v><v| + I (x) |1-v><1-v|: the control is appended as the LAST
/// qubit and U fires when it equals `control_value`.
GateMatrix controlled_lift(const GateMatrix& u, int control_value = 1);

/// Multi-controlled NOT: flips `target` iff every qubit in `controls` is |1>.
/// An empty control set is a plain NOT.
class CnotGate {
public:
    CnotGate(std::vector<Qubit> controls, Qubit target);

    const std::vector<Qubit>& controls() const { return controls_; }
    Qubit target() const { return target_; }

    friend bool operator==(const CnotGate&, const CnotGate&) = default;

private:
    std::vector<Qubit> controls_;  // sorted, unique
    Qubit target_;
};

/// Permutation matrix realizing target -> target XOR AND(controls) over
/// `num_qubits` qubits.
GateMatrix cnot_dense(const CnotGate& g, unsigned num_qubits);

/// Identity over `num_qubits` with the listed basis pairs exchanged. Pairs must
/// be pairwise disjoint.
GateMatrix permutation_gate(std::span<const std::pair<BasisIndex, BasisIndex>> swaps, unsigned num_qubits);

/// Dense 2^m x 2^m expansion of `u` acting on `targets` (targets[0] is the
/// most significant bit of u's index space).
GateMatrix embed_gate(const GateMatrix& u, std::span<const Qubit> targets, unsigned num_qubits);

/// Dense expansion of a mixed-polarity controlled `u`. Negative controls are
/// realized by conjugating positive controls with NOT.
GateMatrix controlled_embed(const GateMatrix& u, std::span<const Qubit> pos_controls,
                            std::span<const Qubit> neg_controls, std::span<const Qubit> targets,
                            unsigned num_qubits);

/// Mask of qubit `q` in a register of `num_qubits` qubits. Qubit 0 is the most
/// significant bit of the basis index.
constexpr BasisIndex qubit_mask(unsigned num_qubits, Qubit q) {
    return BasisIndex{1} << (num_qubits - 1 - q);
}

}  // namespace qqldb
