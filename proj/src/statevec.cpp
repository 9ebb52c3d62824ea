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

#include "qqldb/statevec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fmt/format.h>
#include <random>

#include "qqldb/error.hpp"

namespace qqldb {

namespace {

void check_capacity(unsigned num_qubits, unsigned max_qubits) {
    if (num_qubits < 1 || num_qubits > max_qubits) {
        throw Error(ErrorKind::Capacity,
                    fmt::format("{} qubits requested; supported range is 1..{}", num_qubits, max_qubits));
    }
}

void check_bit(int bit) {
    if (bit != 0 && bit != 1) throw Error(ErrorKind::Argument, fmt::format("bit value must be 0 or 1, got {}", bit));
}

}  // namespace

StateVector::StateVector(unsigned num_qubits, unsigned max_qubits) : num_qubits_(num_qubits) {
    check_capacity(num_qubits, max_qubits);
    amps_.assign(std::size_t{1} << num_qubits, Amplitude{});
    amps_[0] = 1.0;
}

StateVector::StateVector(unsigned num_qubits, std::vector<Amplitude> amps)
    : num_qubits_(num_qubits), amps_(std::move(amps)) {}

StateVector StateVector::from_amplitudes(std::vector<Amplitude> amps, unsigned max_qubits) {
    if (amps.empty() || !std::has_single_bit(amps.size())) {
        throw Error(ErrorKind::Validation, fmt::format("amplitude count {} is not a power of two", amps.size()));
    }
    const auto m = static_cast<unsigned>(std::countr_zero(amps.size()));
    check_capacity(m, max_qubits);
    for (const auto& a : amps) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw Error(ErrorKind::Validation, "amplitude is not finite");
        }
    }
    StateVector s(m, std::move(amps));
    s.check_norm();
    return s;
}

StateVector StateVector::basis_state(unsigned num_qubits, BasisIndex index, unsigned max_qubits) {
    StateVector s(num_qubits, max_qubits);
    if (index >= s.size()) throw Error(ErrorKind::Argument, fmt::format("basis index {} out of range", index));
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
}

double StateVector::norm_squared() const {
    double total = 0.0;
    for (const auto& a : amps_) total += std::norm(a);
    return total;
}

void StateVector::check_norm() const {
    const double n = std::sqrt(norm_squared());
    if (!(std::abs(n - 1.0) < kNormTolerance)) {
        throw Error(ErrorKind::Validation, fmt::format("state norm drifted to {:.17g}", n));
    }
}

void StateVector::validate_qubits(std::span<const Qubit> a, std::span<const Qubit> b,
                                  std::span<const Qubit> c) const {
    BasisIndex seen = 0;
    for (auto list : {a, b, c}) {
        for (Qubit q : list) {
            if (q >= num_qubits_) {
                throw Error(ErrorKind::Argument, fmt::format("qubit {} out of range for {} qubits", q, num_qubits_));
            }
            if (seen & mask(q)) {
                throw Error(ErrorKind::Argument, fmt::format("qubit {} used more than once", q));
            }
            seen |= mask(q);
        }
    }
}

void StateVector::apply_unitary(const GateMatrix& u, std::span<const Qubit> targets) {
    apply_controlled(u, {}, {}, targets);
}

void StateVector::apply_controlled(const GateMatrix& u, std::span<const Qubit> pos_controls,
                                   std::span<const Qubit> neg_controls, std::span<const Qubit> targets) {
    if (u.num_qubits() != targets.size()) {
        throw Error(ErrorKind::Argument,
                    fmt::format("gate over {} qubits given {} targets", u.num_qubits(), targets.size()));
    }
    validate_qubits(targets, pos_controls, neg_controls);

    BasisIndex pos = 0;
    BasisIndex fixed = 0;
    for (Qubit q : pos_controls) pos |= mask(q);
    for (Qubit q : neg_controls) fixed |= mask(q);
    fixed |= pos;
    BasisIndex tmask = 0;
    for (Qubit q : targets) tmask |= mask(q);
    fixed |= tmask;

    const std::size_t d = u.dim();
    std::vector<BasisIndex> offsets(d, 0);
    for (std::size_t l = 0; l < d; ++l)
        for (std::size_t j = 0; j < targets.size(); ++j)
            if ((l >> (targets.size() - 1 - j)) & 1U) offsets[l] |= mask(targets[j]);

    if (d == 2) {
        const Amplitude u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
        const BasisIndex hi = offsets[1];
        for_each_index(num_qubits_, fixed, pos, [&](BasisIndex base) {
            const Amplitude a0 = amps_[base];
            const Amplitude a1 = amps_[base | hi];
            amps_[base] = u00 * a0 + u01 * a1;
            amps_[base | hi] = u10 * a0 + u11 * a1;
        });
    } else {
        std::vector<Amplitude> in(d), out(d);
        for_each_index(num_qubits_, fixed, pos, [&](BasisIndex base) {
            for (std::size_t l = 0; l < d; ++l) in[l] = amps_[base | offsets[l]];
            for (std::size_t r = 0; r < d; ++r) {
                Amplitude acc = 0.0;
                for (std::size_t c = 0; c < d; ++c) acc += u(r, c) * in[c];
                out[r] = acc;
            }
            for (std::size_t l = 0; l < d; ++l) amps_[base | offsets[l]] = out[l];
        });
    }
    check_norm();
}

void StateVector::apply_mcx(std::span<const Qubit> pos_controls, std::span<const Qubit> neg_controls,
                            Qubit target) {
    validate_qubits(std::span<const Qubit>(&target, 1), pos_controls, neg_controls);
    BasisIndex pos = 0;
    BasisIndex fixed = mask(target);
    for (Qubit q : pos_controls) pos |= mask(q);
    for (Qubit q : neg_controls) fixed |= mask(q);
    fixed |= pos;
    const BasisIndex t = mask(target);
    for_each_index(num_qubits_, fixed, pos, [&](BasisIndex base) { std::swap(amps_[base], amps_[base | t]); });
}

void StateVector::apply_cnot(const CnotGate& g) { apply_mcx(g.controls(), {}, g.target()); }

double StateVector::probability_of(Qubit qubit, int bit) const {
    check_bit(bit);
    validate_qubits(std::span<const Qubit>(&qubit, 1), {}, {});
    const BasisIndex m = mask(qubit);
    double p = 0.0;
    for_each_index(num_qubits_, m, bit ? m : 0, [&](BasisIndex i) { p += std::norm(amps_[i]); });
    return std::min(p, 1.0);
}

double StateVector::postselect(Qubit qubit, int bit, double epsilon) {
    const double p = probability_of(qubit, bit);
    if (p < epsilon) {
        throw Error(ErrorKind::ImpossibleOutcome,
                    fmt::format("outcome {} on qubit {} has probability {:.3g}", bit, qubit, p));
    }
    const BasisIndex m = mask(qubit);
    const BasisIndex keep = bit ? m : 0;
    const double scale = 1.0 / std::sqrt(p);
    for (BasisIndex i = 0; i < amps_.size(); ++i) {
        if ((i & m) == keep) {
            amps_[i] *= scale;
        } else {
            amps_[i] = 0.0;
        }
    }
    return p;
}

Histogram StateVector::sample(std::uint64_t shots, std::uint64_t seed) const {
    std::vector<double> cumulative(amps_.size());
    double running = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        running += std::norm(amps_[i]);
        cumulative[i] = running;
    }
    std::mt19937_64 gen(seed);
    Histogram counts;
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53 * running;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        if (it == cumulative.end()) --it;
        ++counts[static_cast<BasisIndex>(it - cumulative.begin())];
    }
    return counts;
}

StateVector tensor_states(const StateVector& a, const StateVector& b, unsigned max_qubits) {
    const unsigned m = a.num_qubits() + b.num_qubits();
    check_capacity(m, max_qubits);
    std::vector<Amplitude> amps(std::size_t{1} << m);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) amps[i * b.size() + j] = a[i] * b[j];
    return StateVector::from_amplitudes(std::move(amps), max_qubits);
}

}  // namespace qqldb
