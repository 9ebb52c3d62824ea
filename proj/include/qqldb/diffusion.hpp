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

#include <numbers>
#include <span>

#include "qqldb/gates.hpp"
#include "qqldb/statevec.hpp"

namespace qqldb {

/// Partial diffusion over `num_data` data qubits plus one flag qubit.
struct DiffusionParams {
    unsigned num_data = 1;
    double phi = std::numbers::pi;
};

/// Fast path on a register of exactly num_data + 1 qubits, flag last.
///
/// With <a> the mean of the flag-0 amplitudes a_j over all N = 2^n data
/// values: a_j -> (1 - e^{i phi}) <a> - a_j and b_j -> -b_j on the flag-1
/// half. Two O(2^(n+1)) sweeps, no matrix.
void apply_partial_diffusion(StateVector& s, const DiffusionParams& p);

/// Same operator inside a larger register: data are qubits [0, num_data),
/// `flag` is any later qubit and every other qubit is a spectator, so the
/// operator acts independently on each spectator configuration. Spectator
/// configurations where a `neg_controls` qubit is |1> are left untouched.
void apply_partial_diffusion(StateVector& s, const DiffusionParams& p, Qubit flag,
                             std::span<const Qubit> neg_controls = {});

/// (H^n ⊗ I)((1 - e^{i phi})|0><0| - I)(H^n ⊗ I) over num_data + 1 qubits,
/// with |0> the all-zeros state of the whole register.
GateMatrix dense_partial_diffusion(const DiffusionParams& p);

}  // namespace qqldb
