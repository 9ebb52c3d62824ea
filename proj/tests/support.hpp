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

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "qqldb/boolexpr.hpp"
#include "qqldb/gates.hpp"
#include "qqldb/schema.hpp"
#include "qqldb/statevec.hpp"

namespace qqldb::testing {

using Amps = std::vector<Amplitude>;

/// Normalized complex vector with a random subset of zero entries.
Amps random_amplitudes(std::mt19937_64& rng, std::size_t size, double zero_fraction = 0.0);

/// Product of 2x2 and larger matrices written out the textbook way.
Matrix kron_all(const std::vector<Matrix>& factors);
Matrix h2();
Matrix x2();
Matrix i2();
Matrix projector(unsigned bits, BasisIndex value);

double max_diff(std::span<const Amplitude> a, std::span<const Amplitude> b);

/// Indices whose amplitude magnitude exceeds `tol`.
std::set<BasisIndex> support_of(std::span<const Amplitude> amps, double tol = 1e-10);

/// Random predicate over the schema's fields, depth <= `depth`.
BoolExpr random_expr(std::mt19937_64& rng, const TableSchema& schema, int depth = 2);

/// Random schema with total width in [min_bits, max_bits].
TableSchema random_schema(std::mt19937_64& rng, unsigned min_bits, unsigned max_bits);

/// Predicate value on a data index, evaluated field by field straight from
/// the bit layout (no expression binding shared with the library).
bool eval_on_index(const BoolExpr& e, const TableSchema& schema, BasisIndex index);

/// Oracle as a dense permutation on an (n+1)-qubit register, last qubit the
/// target: |x, y> -> |x, y ^ f(x)>.
Matrix dense_oracle(const std::vector<bool>& f, unsigned n);

/// The seven insertion operators S_1..S_7 for three data qubits, transcribed
/// term by term from their projector sums.
Matrix insertion_step_literal(BasisIndex k);

}  // namespace qqldb::testing
