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

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "qqldb/gates.hpp"

namespace qqldb {

inline constexpr unsigned kDefaultMaxQubits = 22;
inline constexpr double kNormTolerance = 1e-9;
inline constexpr double kDefaultEpsilon = 1e-12;

using Histogram = std::map<BasisIndex, std::uint64_t>;

/// Pure state of `m` qubits stored as 2^m complex amplitudes.
///
/// Basis index i is read with qubit 0 as the most significant bit, so the ket
/// |x0 x1 ... x(m-1)> is the binary numeral x0x1...x(m-1). Every mutating
/// operation keeps the norm at 1 within kNormTolerance.
class StateVector {
public:
    /// |0...0> over `num_qubits` qubits. Throws ErrorKind::Capacity unless
    /// 1 <= num_qubits <= max_qubits.
    explicit StateVector(unsigned num_qubits, unsigned max_qubits = kDefaultMaxQubits);

    /// Takes ownership of explicit amplitudes; the length must be a power of
    /// two and the norm 1 within kNormTolerance.
    static StateVector from_amplitudes(std::vector<Amplitude> amps, unsigned max_qubits = kDefaultMaxQubits);

    static StateVector basis_state(unsigned num_qubits, BasisIndex index, unsigned max_qubits = kDefaultMaxQubits);

    unsigned num_qubits() const { return num_qubits_; }
    std::size_t size() const { return amps_.size(); }
    std::span<const Amplitude> amplitudes() const { return amps_; }
    Amplitude operator[](BasisIndex i) const { return amps_[i]; }
    BasisIndex mask(Qubit q) const { return qubit_mask(num_qubits_, q); }

    double norm_squared() const;

    /// Applies `u` to `targets` (targets[0] is the most significant bit of u's
    /// index space), identity elsewhere. Works in place over amplitude groups.
    void apply_unitary(const GateMatrix& u, std::span<const Qubit> targets);

    /// Applies `u` on the subspace where every pos_control is 1 and every
    /// neg_control is 0.
    void apply_controlled(const GateMatrix& u, std::span<const Qubit> pos_controls,
                          std::span<const Qubit> neg_controls, std::span<const Qubit> targets);

    /// Multi-controlled NOT with mixed polarity. Exact (pure permutation).
    void apply_mcx(std::span<const Qubit> pos_controls, std::span<const Qubit> neg_controls, Qubit target);
    void apply_cnot(const CnotGate& g);

    /// Projects onto `qubit == bit` and renormalizes. Returns the probability
    /// of that outcome before projection. Throws ErrorKind::ImpossibleOutcome
    /// if it is below `epsilon`.
    double postselect(Qubit qubit, int bit, double epsilon = kDefaultEpsilon);

    double probability_of(Qubit qubit, int bit) const;

    /// Draws `shots` basis indices i.i.d. from |amp|^2.
    ///
    /// Generator: std::mt19937_64 seeded with `seed`; each draw takes one
    /// 64-bit output x and forms u = (x >> 11) * 2^-53 in [0, 1), then picks
    /// the first index whose running cumulative probability (summed in index
    /// order) exceeds u * total. Both pieces are fully specified, so
    /// histograms are reproducible across platforms.
    Histogram sample(std::uint64_t shots, std::uint64_t seed) const;

    /// Direct amplitude access for kernels layered on top of the engine
    /// (oracles, diffusion). Callers must keep the state normalized.
    std::span<Amplitude> mutable_amplitudes() { return amps_; }

    /// Throws ErrorKind::Validation if the norm drifted beyond kNormTolerance.
    void check_norm() const;

private:
    StateVector(unsigned num_qubits, std::vector<Amplitude> amps);
    void validate_qubits(std::span<const Qubit> a, std::span<const Qubit> b, std::span<const Qubit> c) const;

    unsigned num_qubits_;
    std::vector<Amplitude> amps_;
};

/// Combined system a (x) b; `a` occupies the leading qubits.
StateVector tensor_states(const StateVector& a, const StateVector& b, unsigned max_qubits = kDefaultMaxQubits);

/// Calls fn(index) for every index with (index & fixed_mask) == fixed_value,
/// in increasing order, among the 2^num_qubits basis states.
template <typename Fn>
void for_each_index(unsigned num_qubits, BasisIndex fixed_mask, BasisIndex fixed_value, Fn&& fn) {
    const BasisIndex full = (BasisIndex{1} << num_qubits) - 1;
    const BasisIndex free_mask = full & ~fixed_mask;
    BasisIndex free = 0;
    while (true) {
        fn(free | fixed_value);
        if (free == free_mask) break;
        free = (free - free_mask) & free_mask;
    }
}

}  // namespace qqldb
