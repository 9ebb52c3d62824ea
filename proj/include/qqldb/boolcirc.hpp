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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "qqldb/boolexpr.hpp"
#include "qqldb/gates.hpp"
#include "qqldb/schema.hpp"
#include "qqldb/statevec.hpp"

namespace qqldb {

inline constexpr unsigned kTruthTableVarLimit = 20;
/// Predicates over more variables than this run through the truth-table
/// oracle instead of an expanded CNOT list.
inline constexpr unsigned kGateOracleVarLimit = 16;

/// f : {0,1}^v -> {0,1}. Entry i is the value on the assignment whose binary
/// numeral is i, with variable x0 as the most significant bit.
class TruthTable {
public:
    explicit TruthTable(unsigned num_vars);
    TruthTable(unsigned num_vars, std::vector<std::uint8_t> bits);
    static TruthTable from_function(unsigned num_vars, const std::function<bool(BasisIndex)>& f);

    unsigned num_vars() const { return num_vars_; }
    std::size_t size() const { return bits_.size(); }
    bool operator[](BasisIndex i) const { return bits_[i] != 0; }
    void set(BasisIndex i, bool v) { bits_[i] = v ? 1 : 0; }
    std::size_t count_ones() const;

    friend bool operator==(const TruthTable&, const TruthTable&) = default;

private:
    unsigned num_vars_;
    std::vector<std::uint8_t> bits_;
};

/// Truth table of `e` over every data bit of `schema` (entry i evaluates the
/// record decode(i)). Throws ErrorKind::Capacity beyond kTruthTableVarLimit.
TruthTable truth_table(const BoolExpr& e, const TableSchema& schema);

/// Variable set of an AND-monomial: bit j set means x_j is a factor. The
/// empty set is the constant-1 term.
using Monomial = std::uint64_t;

/// XOR of AND-monomials (positive-polarity Reed-Muller expansion). Monomials
/// are unique and kept in emission order: higher degree first, then by
/// ascending variable list.
class ReedMullerForm {
public:
    ReedMullerForm(unsigned num_vars, std::vector<Monomial> monomials);

    unsigned num_vars() const { return num_vars_; }
    const std::vector<Monomial>& monomials() const { return monomials_; }
    std::size_t size() const { return monomials_.size(); }
    /// Value on an assignment index (same ordering as TruthTable).
    bool evaluate(BasisIndex assignment) const;

    friend bool operator==(const ReedMullerForm&, const ReedMullerForm&) = default;

private:
    unsigned num_vars_;
    std::vector<Monomial> monomials_;
};

/// Binary Moebius transform over GF(2), O(v 2^v).
ReedMullerForm to_reed_muller(const TruthTable& t);

/// One CNOT per monomial, controls mapped through var_qubits[j] for x_j.
std::vector<CnotGate> compile_to_cnots(const ReedMullerForm& rm, std::span<const Qubit> var_qubits, Qubit target);

/// "x0 x1 ⊕ x1 ⊕ 1" style rendering.
std::string to_string(const ReedMullerForm& rm);

/// Runs a CNOT list. `neg_controls` are added to every gate so the whole
/// circuit only acts where those qubits are |0>.
void apply_oracle(StateVector& s, std::span<const CnotGate> gates, std::span<const Qubit> neg_controls = {});

/// |x, y> -> |x, y ⊕ f(x)> by direct conditional swaps. data_qubits[j]
/// carries variable x_j.
void apply_oracle(StateVector& s, const TruthTable& f, std::span<const Qubit> data_qubits, Qubit target,
                  std::span<const Qubit> neg_controls = {});

/// A predicate compiled against a schema for a fixed target qubit. Only the
/// bits of referenced fields become oracle variables; small predicates
/// become CNOT circuits, large ones stay as truth tables.
class Oracle {
public:
    /// `bit_qubits[b]` is the register qubit holding schema bit b (bit 0 is
    /// the most significant bit of the first field).
    Oracle(const BoolExpr& e, const TableSchema& schema, std::span<const Qubit> bit_qubits, Qubit target);
    /// Schema bits live on qubits [0, n).
    Oracle(const BoolExpr& e, const TableSchema& schema, Qubit target);

    void apply(StateVector& s, std::span<const Qubit> neg_controls = {}) const;

    bool uses_gates() const { return gate_path_; }
    const std::vector<CnotGate>& gates() const { return gates_; }
    const std::vector<Qubit>& var_qubits() const { return var_qubits_; }
    const TruthTable& table() const { return table_; }
    Qubit target() const { return target_; }

private:
    std::vector<Qubit> var_qubits_;
    TruthTable table_;
    std::vector<CnotGate> gates_;
    Qubit target_;
    bool gate_path_ = false;
};

}  // namespace qqldb
