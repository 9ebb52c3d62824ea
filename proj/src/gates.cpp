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

#include "qqldb/gates.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <set>

#include "qqldb/detail/gate_access.hpp"
#include "qqldb/error.hpp"

namespace qqldb {

namespace {

void check_dense_limit(unsigned num_qubits) {
    if (num_qubits > kDenseQubitLimit) {
        throw Error(ErrorKind::Capacity,
                    fmt::format("dense matrix over {} qubits exceeds the limit of {}", num_qubits, kDenseQubitLimit));
    }
}

void check_qubits(std::span<const Qubit> qubits, unsigned num_qubits, std::set<Qubit>& seen) {
    for (Qubit q : qubits) {
        if (q >= num_qubits) {
            throw Error(ErrorKind::Argument, fmt::format("qubit {} out of range for {} qubits", q, num_qubits));
        }
        if (!seen.insert(q).second) {
            throw Error(ErrorKind::Argument, fmt::format("qubit {} listed more than once", q));
        }
    }
}

BasisIndex mask_of(std::span<const Qubit> qubits, unsigned num_qubits) {
    BasisIndex mask = 0;
    for (Qubit q : qubits) mask |= qubit_mask(num_qubits, q);
    return mask;
}

// Scatter bit l of a local (gate) index onto the register positions of `targets`.
std::vector<BasisIndex> local_offsets(std::span<const Qubit> targets, unsigned num_qubits) {
    const std::size_t k = targets.size();
    std::vector<BasisIndex> offsets(std::size_t{1} << k, 0);
    for (std::size_t l = 0; l < offsets.size(); ++l) {
        for (std::size_t j = 0; j < k; ++j) {
            if ((l >> (k - 1 - j)) & 1U) offsets[l] |= qubit_mask(num_qubits, targets[j]);
        }
    }
    return offsets;
}

std::size_t gather_local(BasisIndex index, std::span<const Qubit> targets, unsigned num_qubits) {
    std::size_t local = 0;
    for (Qubit q : targets) local = (local << 1) | ((index & qubit_mask(num_qubits, q)) ? 1U : 0U);
    return local;
}

}  // namespace

Matrix::Matrix(unsigned num_qubits)
    : num_qubits_(num_qubits), dim_(std::size_t{1} << num_qubits), entries_(dim_ * dim_) {
    check_dense_limit(num_qubits);
}

Matrix::Matrix(unsigned num_qubits, std::vector<Amplitude> entries)
    : num_qubits_(num_qubits), dim_(std::size_t{1} << num_qubits), entries_(std::move(entries)) {
    check_dense_limit(num_qubits);
    if (entries_.size() != dim_ * dim_) {
        throw Error(ErrorKind::Argument,
                    fmt::format("expected {} matrix entries, got {}", dim_ * dim_, entries_.size()));
    }
}

Matrix Matrix::identity(unsigned num_qubits) {
    Matrix m(num_qubits);
    for (std::size_t i = 0; i < m.dim_; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::adjoint() const {
    Matrix out(num_qubits_);
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

std::vector<Amplitude> Matrix::apply(std::span<const Amplitude> vec) const {
    if (vec.size() != dim_) {
        throw Error(ErrorKind::Argument, fmt::format("vector length {} does not match matrix dim {}", vec.size(), dim_));
    }
    std::vector<Amplitude> out(dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
        Amplitude acc = 0.0;
        const Amplitude* row = &entries_[r * dim_];
        for (std::size_t c = 0; c < dim_; ++c) acc += row[c] * vec[c];
        out[r] = acc;
    }
    return out;
}

double Matrix::max_abs_diff(const Matrix& other) const {
    if (other.dim_ != dim_) return INFINITY;
    double worst = 0.0;
    for (std::size_t i = 0; i < entries_.size(); ++i) worst = std::max(worst, std::abs(entries_[i] - other.entries_[i]));
    return worst;
}

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
    if (lhs.dim_ != rhs.dim_) {
        throw Error(ErrorKind::Argument, "matrix product of mismatched dimensions");
    }
    const std::size_t d = lhs.dim_;
    Matrix out(lhs.num_qubits_);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t k = 0; k < d; ++k) {
            const Amplitude a = lhs(r, k);
            if (a == Amplitude{}) continue;
            const Amplitude* src = &rhs.entries_[k * d];
            Amplitude* dst = &out.entries_[r * d];
            for (std::size_t c = 0; c < d; ++c) dst[c] += a * src[c];
        }
    }
    return out;
}

Matrix kron(const Matrix& lhs, const Matrix& rhs) {
    check_dense_limit(lhs.num_qubits() + rhs.num_qubits());
    Matrix out(lhs.num_qubits() + rhs.num_qubits());
    const std::size_t db = rhs.dim();
    for (std::size_t i = 0; i < lhs.dim(); ++i)
        for (std::size_t j = 0; j < lhs.dim(); ++j) {
            const Amplitude u = lhs(i, j);
            if (u == Amplitude{}) continue;
            for (std::size_t k = 0; k < db; ++k)
                for (std::size_t l = 0; l < db; ++l) out(i * db + k, j * db + l) = u * rhs(k, l);
        }
    return out;
}

bool is_unitary(const Matrix& m, double tol) {
    const std::size_t d = m.dim();
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = r; c < d; ++c) {
            Amplitude acc = 0.0;
            for (std::size_t k = 0; k < d; ++k) acc += m(r, k) * std::conj(m(c, k));
            const Amplitude expected = (r == c) ? 1.0 : 0.0;
            if (!(std::abs(acc - expected) <= tol)) return false;
        }
    }
    return true;
}

GateMatrix::GateMatrix(Matrix m, double tol) : m_(std::move(m)) {
    if (!is_unitary(m_, tol)) {
        throw Error(ErrorKind::Validation, fmt::format("matrix over {} qubits is not unitary", m_.num_qubits()));
    }
}

GateMatrix GateMatrix::adjoint() const { return detail::GateAccess::trusted(m_.adjoint()); }

GateMatrix operator*(const GateMatrix& lhs, const GateMatrix& rhs) {
    return detail::GateAccess::trusted(lhs.m_ * rhs.m_);
}

GateMatrix identity_gate(unsigned num_qubits) { return detail::GateAccess::trusted(Matrix::identity(num_qubits)); }

GateMatrix not_gate() { return detail::GateAccess::trusted(Matrix(1, {0.0, 1.0, 1.0, 0.0})); }

GateMatrix hadamard_gate() {
    const double s = 1.0 / std::sqrt(2.0);
    return detail::GateAccess::trusted(Matrix(1, {s, s, s, -s}));
}

GateMatrix tensor_gates(const GateMatrix& lhs, const GateMatrix& rhs) {
    return detail::GateAccess::trusted(kron(lhs.matrix(), rhs.matrix()));
}

GateMatrix controlled_lift(const GateMatrix& u, int control_value) {
    if (control_value != 0 && control_value != 1) {
        throw Error(ErrorKind::Argument, "control value must be 0 or 1");
    }
    check_dense_limit(u.num_qubits() + 1);
    Matrix on(1);
    Matrix off(1);
    on(control_value, control_value) = 1.0;
    off(1 - control_value, 1 - control_value) = 1.0;
    Matrix lifted = kron(u.matrix(), on);
    const Matrix idle = kron(Matrix::identity(u.num_qubits()), off);
    for (std::size_t r = 0; r < lifted.dim(); ++r)
        for (std::size_t c = 0; c < lifted.dim(); ++c) lifted(r, c) += idle(r, c);
    return detail::GateAccess::trusted(std::move(lifted));
}

CnotGate::CnotGate(std::vector<Qubit> controls, Qubit target) : controls_(std::move(controls)), target_(target) {
    std::sort(controls_.begin(), controls_.end());
    if (std::adjacent_find(controls_.begin(), controls_.end()) != controls_.end()) {
        throw Error(ErrorKind::Argument, "duplicate control qubit");
    }
    if (std::binary_search(controls_.begin(), controls_.end(), target_)) {
        throw Error(ErrorKind::Argument, fmt::format("target qubit {} is also a control", target_));
    }
}

GateMatrix cnot_dense(const CnotGate& g, unsigned num_qubits) {
    check_dense_limit(num_qubits);
    std::set<Qubit> seen;
    check_qubits(g.controls(), num_qubits, seen);
    const Qubit target[] = {g.target()};
    check_qubits(target, num_qubits, seen);
    const BasisIndex cmask = mask_of(g.controls(), num_qubits);
    const BasisIndex tmask = qubit_mask(num_qubits, g.target());
    Matrix m(num_qubits);
    for (BasisIndex c = 0; c < m.dim(); ++c) {
        const BasisIndex r = ((c & cmask) == cmask) ? (c ^ tmask) : c;
        m(r, c) = 1.0;
    }
    return detail::GateAccess::trusted(std::move(m));
}

GateMatrix permutation_gate(std::span<const std::pair<BasisIndex, BasisIndex>> swaps, unsigned num_qubits) {
    check_dense_limit(num_qubits);
    const BasisIndex dim = BasisIndex{1} << num_qubits;
    std::vector<BasisIndex> image(dim);
    for (BasisIndex i = 0; i < dim; ++i) image[i] = i;
    std::set<BasisIndex> used;
    for (auto [a, b] : swaps) {
        if (a >= dim || b >= dim) {
            throw Error(ErrorKind::Argument, fmt::format("basis index pair ({}, {}) out of range", a, b));
        }
        if (!used.insert(a).second || !used.insert(b).second) {
            throw Error(ErrorKind::Argument, fmt::format("swap pair ({}, {}) overlaps another pair", a, b));
        }
        image[a] = b;
        image[b] = a;
    }
    Matrix m(num_qubits);
    for (BasisIndex c = 0; c < dim; ++c) m(image[c], c) = 1.0;
    return detail::GateAccess::trusted(std::move(m));
}

GateMatrix embed_gate(const GateMatrix& u, std::span<const Qubit> targets, unsigned num_qubits) {
    return controlled_embed(u, {}, {}, targets, num_qubits);
}

GateMatrix controlled_embed(const GateMatrix& u, std::span<const Qubit> pos_controls,
                            std::span<const Qubit> neg_controls, std::span<const Qubit> targets,
                            unsigned num_qubits) {
    check_dense_limit(num_qubits);
    if (u.num_qubits() != targets.size()) {
        throw Error(ErrorKind::Argument, "gate size does not match target count");
    }
    std::set<Qubit> seen;
    check_qubits(targets, num_qubits, seen);
    check_qubits(pos_controls, num_qubits, seen);
    check_qubits(neg_controls, num_qubits, seen);

    // Positive-controlled expansion over pos ∪ neg controls.
    const BasisIndex cmask = mask_of(pos_controls, num_qubits) | mask_of(neg_controls, num_qubits);
    const BasisIndex tmask = mask_of(targets, num_qubits);
    const auto offsets = local_offsets(targets, num_qubits);
    Matrix positive(num_qubits);
    for (BasisIndex c = 0; c < positive.dim(); ++c) {
        if ((c & cmask) != cmask) {
            positive(c, c) = 1.0;
            continue;
        }
        const std::size_t col = gather_local(c, targets, num_qubits);
        const BasisIndex rest = c & ~tmask;
        for (std::size_t row = 0; row < u.dim(); ++row) positive(rest | offsets[row], c) = u(row, col);
    }

    // Conjugate by NOT on the negative controls: (X P X)[r][c] = P[r^x][c^x].
    const BasisIndex xmask = mask_of(neg_controls, num_qubits);
    if (xmask == 0) return detail::GateAccess::trusted(std::move(positive));
    Matrix out(num_qubits);
    for (BasisIndex r = 0; r < out.dim(); ++r)
        for (BasisIndex c = 0; c < out.dim(); ++c) out(r, c) = positive(r ^ xmask, c ^ xmask);
    return detail::GateAccess::trusted(std::move(out));
}

}  // namespace qqldb
