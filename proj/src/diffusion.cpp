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

#include "qqldb/diffusion.hpp"

#include <cmath>
#include <fmt/format.h>

#include "qqldb/detail/gate_access.hpp"
#include "qqldb/error.hpp"

namespace qqldb {

namespace {

Amplitude mean_factor(double phi) {
    if (!std::isfinite(phi)) throw Error(ErrorKind::Argument, "diffusion angle must be finite");
    // 1 - e^{i pi} evaluates to 2 - 1.2e-16i in floating point; keep it exact.
    if (phi == std::numbers::pi) return 2.0;
    return 1.0 - std::polar(1.0, phi);
}

}  // namespace

void apply_partial_diffusion(StateVector& s, const DiffusionParams& p) {
    if (s.num_qubits() != p.num_data + 1) {
        throw Error(ErrorKind::Argument, fmt::format("partial diffusion over {} data qubits needs a {}-qubit register",
                                                     p.num_data, p.num_data + 1));
    }
    apply_partial_diffusion(s, p, p.num_data);
}

void apply_partial_diffusion(StateVector& s, const DiffusionParams& p, Qubit flag,
                             std::span<const Qubit> neg_controls) {
    const unsigned m = s.num_qubits();
    if (p.num_data < 1 || flag < p.num_data || flag >= m) {
        throw Error(ErrorKind::Argument,
                    fmt::format("partial diffusion needs data qubits [0, {}) and a later flag qubit", p.num_data));
    }
    const Amplitude factor = mean_factor(p.phi);
    const unsigned data_shift = m - p.num_data;
    const BasisIndex n_data = BasisIndex{1} << p.num_data;
    const BasisIndex data_mask = (n_data - 1) << data_shift;
    const BasisIndex flag_mask = s.mask(flag);
    BasisIndex neg = 0;
    for (Qubit q : neg_controls) {
        if (q >= m || q < p.num_data || q == flag) {
            throw Error(ErrorKind::Argument, fmt::format("invalid diffusion control qubit {}", q));
        }
        neg |= s.mask(q);
    }

    auto amps = s.mutable_amplitudes();
    for_each_index(m, data_mask | flag_mask | neg, 0, [&](BasisIndex spectator) {
        Amplitude sum = 0.0;
        for (BasisIndex j = 0; j < n_data; ++j) sum += amps[(j << data_shift) | spectator];
        const Amplitude shifted_mean = factor * (sum / static_cast<double>(n_data));
        for (BasisIndex j = 0; j < n_data; ++j) {
            const BasisIndex i = (j << data_shift) | spectator;
            amps[i] = shifted_mean - amps[i];
            amps[i | flag_mask] = -amps[i | flag_mask];
        }
    });
    s.check_norm();
}

GateMatrix dense_partial_diffusion(const DiffusionParams& p) {
    if (p.num_data + 1 > kDenseQubitLimit) {
        throw Error(ErrorKind::Capacity, fmt::format("dense partial diffusion over {} data qubits exceeds the limit of {}",
                                                     p.num_data, kDenseQubitLimit - 1));
    }
    GateMatrix h = hadamard_gate();
    for (unsigned i = 1; i < p.num_data; ++i) h = tensor_gates(h, hadamard_gate());
    const GateMatrix outer = tensor_gates(h, identity_gate(1));

    Matrix middle = Matrix::identity(p.num_data + 1);
    for (std::size_t i = 0; i < middle.dim(); ++i) middle(i, i) = -1.0;
    middle(0, 0) += mean_factor(p.phi);
    const GateMatrix reflect = detail::GateAccess::trusted(std::move(middle));
    return outer * reflect * outer;
}

}  // namespace qqldb
