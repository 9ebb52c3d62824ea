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

#include "qqldb/boolcirc.hpp"

#include <algorithm>
#include <bit>
#include <fmt/format.h>
#include <set>

#include "qqldb/error.hpp"

namespace qqldb {

namespace {

// Expression with field lookups resolved to (shift, mask) over an index.
struct BoundExpr {
    BoolExpr::Kind kind;
    unsigned shift = 0;
    std::uint64_t mask = 0;
    CompareOp op = CompareOp::Eq;
    std::uint64_t literal = 0;
    bool value = false;
    std::vector<BoundExpr> children;

    bool eval(BasisIndex index) const {
        switch (kind) {
            case BoolExpr::Kind::Comparison: return compare_values((index >> shift) & mask, op, literal);
            case BoolExpr::Kind::Const: return value;
            case BoolExpr::Kind::Not: return !children[0].eval(index);
            case BoolExpr::Kind::And: return children[0].eval(index) && children[1].eval(index);
            case BoolExpr::Kind::Or: return children[0].eval(index) || children[1].eval(index);
        }
        return false;
    }
};

BoundExpr bind(const BoolExpr& e, const TableSchema* schema) {
    BoundExpr b;
    b.kind = e.kind();
    switch (e.kind()) {
        case BoolExpr::Kind::Comparison: {
            if (!schema) throw Error(ErrorKind::Schema, fmt::format("unknown field '{}'", e.field()));
            const std::size_t i = schema->field_index(e.field());
            const unsigned w = schema->fields()[i].width;
            b.shift = schema->num_bits() - schema->field_offset(i) - w;
            b.mask = (std::uint64_t{1} << w) - 1;
            b.op = e.op();
            b.literal = e.literal();
            break;
        }
        case BoolExpr::Kind::Const: b.value = e.value(); break;
        case BoolExpr::Kind::Not: b.children.push_back(bind(e.operand(), schema)); break;
        case BoolExpr::Kind::And:
        case BoolExpr::Kind::Or:
            b.children.push_back(bind(e.lhs(), schema));
            b.children.push_back(bind(e.rhs(), schema));
            break;
    }
    return b;
}

void collect_fields(const BoolExpr& e, std::set<std::string>& out) {
    switch (e.kind()) {
        case BoolExpr::Kind::Comparison: out.insert(e.field()); return;
        case BoolExpr::Kind::Const: return;
        case BoolExpr::Kind::Not: collect_fields(e.operand(), out); return;
        case BoolExpr::Kind::And:
        case BoolExpr::Kind::Or:
            collect_fields(e.lhs(), out);
            collect_fields(e.rhs(), out);
            return;
    }
}

std::vector<unsigned> vars_of(Monomial m) {
    std::vector<unsigned> vars;
    for (unsigned j = 0; m >> j; ++j)
        if ((m >> j) & 1U) vars.push_back(j);
    return vars;
}

bool emission_order(Monomial a, Monomial b) {
    const int da = std::popcount(a);
    const int db = std::popcount(b);
    if (da != db) return da > db;
    return vars_of(a) < vars_of(b);
}

std::vector<Qubit> leading_qubits(unsigned n) {
    std::vector<Qubit> qubits(n);
    for (unsigned i = 0; i < n; ++i) qubits[i] = i;
    return qubits;
}

}  // namespace

TruthTable::TruthTable(unsigned num_vars) : num_vars_(num_vars) {
    if (num_vars > kTruthTableVarLimit) {
        throw Error(ErrorKind::Capacity,
                    fmt::format("truth table over {} variables exceeds the limit of {}", num_vars, kTruthTableVarLimit));
    }
    bits_.assign(std::size_t{1} << num_vars, 0);
}

TruthTable::TruthTable(unsigned num_vars, std::vector<std::uint8_t> bits) : TruthTable(num_vars) {
    if (bits.size() != bits_.size()) {
        throw Error(ErrorKind::Argument, fmt::format("truth table over {} variables needs {} entries, got {}",
                                                     num_vars, bits_.size(), bits.size()));
    }
    for (std::size_t i = 0; i < bits.size(); ++i) bits_[i] = bits[i] ? 1 : 0;
}

TruthTable TruthTable::from_function(unsigned num_vars, const std::function<bool(BasisIndex)>& f) {
    TruthTable t(num_vars);
    for (BasisIndex i = 0; i < t.size(); ++i) t.bits_[i] = f(i) ? 1 : 0;
    return t;
}

std::size_t TruthTable::count_ones() const { return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1)); }

TruthTable truth_table(const BoolExpr& e, const TableSchema& schema) {
    validate(e, schema);
    TruthTable t(schema.num_bits());
    const BoundExpr bound = bind(e, &schema);
    for (BasisIndex i = 0; i < t.size(); ++i) t.set(i, bound.eval(i));
    return t;
}

ReedMullerForm::ReedMullerForm(unsigned num_vars, std::vector<Monomial> monomials)
    : num_vars_(num_vars), monomials_(std::move(monomials)) {
    for (Monomial m : monomials_) {
        if (num_vars < 64 && (m >> num_vars)) {
            throw Error(ErrorKind::Argument, "monomial references a variable beyond the form's arity");
        }
    }
    std::sort(monomials_.begin(), monomials_.end(), emission_order);
    if (std::adjacent_find(monomials_.begin(), monomials_.end()) != monomials_.end()) {
        throw Error(ErrorKind::Argument, "duplicate monomial in Reed-Muller form");
    }
}

bool ReedMullerForm::evaluate(BasisIndex assignment) const {
    // Map the assignment to a variable mask: x_j is bit (v-1-j) of the index.
    Monomial vars = 0;
    for (unsigned j = 0; j < num_vars_; ++j)
        if ((assignment >> (num_vars_ - 1 - j)) & 1U) vars |= Monomial{1} << j;
    bool acc = false;
    for (Monomial m : monomials_) acc ^= (m & vars) == m;
    return acc;
}

ReedMullerForm to_reed_muller(const TruthTable& t) {
    const unsigned v = t.num_vars();
    std::vector<std::uint8_t> coeff(t.size());
    for (BasisIndex i = 0; i < t.size(); ++i) coeff[i] = t[i] ? 1 : 0;
    for (BasisIndex step = 1; step < coeff.size(); step <<= 1)
        for (BasisIndex i = 0; i < coeff.size(); ++i)
            if (i & step) coeff[i] ^= coeff[i ^ step];

    std::vector<Monomial> monomials;
    for (BasisIndex a = 0; a < coeff.size(); ++a) {
        if (!coeff[a]) continue;
        Monomial m = 0;
        for (unsigned j = 0; j < v; ++j)
            if ((a >> (v - 1 - j)) & 1U) m |= Monomial{1} << j;
        monomials.push_back(m);
    }
    return ReedMullerForm(v, std::move(monomials));
}

std::vector<CnotGate> compile_to_cnots(const ReedMullerForm& rm, std::span<const Qubit> var_qubits, Qubit target) {
    if (var_qubits.size() < rm.num_vars()) {
        throw Error(ErrorKind::Argument, "fewer qubits than Reed-Muller variables");
    }
    if (std::find(var_qubits.begin(), var_qubits.end(), target) != var_qubits.end()) {
        throw Error(ErrorKind::Argument, fmt::format("target qubit {} collides with a variable qubit", target));
    }
    std::vector<CnotGate> gates;
    gates.reserve(rm.size());
    for (Monomial m : rm.monomials()) {
        std::vector<Qubit> controls;
        for (unsigned j : vars_of(m)) controls.push_back(var_qubits[j]);
        gates.emplace_back(std::move(controls), target);
    }
    return gates;
}

std::string to_string(const ReedMullerForm& rm) {
    if (rm.monomials().empty()) return "0";
    std::string out;
    for (Monomial m : rm.monomials()) {
        if (!out.empty()) out += " ⊕ ";
        if (m == 0) {
            out += '1';
            continue;
        }
        for (unsigned j : vars_of(m)) out += fmt::format("x{}", j);
    }
    return out;
}

void apply_oracle(StateVector& s, std::span<const CnotGate> gates, std::span<const Qubit> neg_controls) {
    for (const auto& g : gates) s.apply_mcx(g.controls(), neg_controls, g.target());
}

void apply_oracle(StateVector& s, const TruthTable& f, std::span<const Qubit> data_qubits, Qubit target,
                  std::span<const Qubit> neg_controls) {
    if (data_qubits.size() != f.num_vars()) {
        throw Error(ErrorKind::Argument, "truth table arity does not match the data qubit count");
    }
    BasisIndex used = s.mask(target);
    for (Qubit q : data_qubits) {
        if (q >= s.num_qubits() || (used & s.mask(q))) {
            throw Error(ErrorKind::Argument, fmt::format("data qubit {} is out of range or overlaps", q));
        }
        used |= s.mask(q);
    }
    BasisIndex neg = 0;
    for (Qubit q : neg_controls) {
        if (q >= s.num_qubits() || (used & s.mask(q))) {
            throw Error(ErrorKind::Argument, fmt::format("control qubit {} is out of range or overlaps", q));
        }
        neg |= s.mask(q);
    }

    // Contiguous ascending data qubits reduce the gather to a shift.
    bool contiguous = true;
    for (std::size_t j = 1; j < data_qubits.size(); ++j) contiguous &= data_qubits[j] == data_qubits[j - 1] + 1;
    const unsigned v = f.num_vars();
    const unsigned shift = v == 0 ? 0 : s.num_qubits() - 1 - data_qubits.back();
    const BasisIndex vmask = (BasisIndex{1} << v) - 1;
    std::vector<BasisIndex> masks;
    for (Qubit q : data_qubits) masks.push_back(s.mask(q));

    auto amps = s.mutable_amplitudes();
    const BasisIndex t = s.mask(target);
    for_each_index(s.num_qubits(), t | neg, 0, [&](BasisIndex base) {
        BasisIndex x = 0;
        if (contiguous) {
            x = (base >> shift) & vmask;
        } else {
            for (BasisIndex m : masks) x = (x << 1) | ((base & m) ? 1U : 0U);
        }
        if (f[x]) std::swap(amps[base], amps[base | t]);
    });
}

Oracle::Oracle(const BoolExpr& e, const TableSchema& schema, Qubit target)
    : Oracle(e, schema, leading_qubits(schema.num_bits()), target) {}

Oracle::Oracle(const BoolExpr& e, const TableSchema& schema, std::span<const Qubit> bit_qubits, Qubit target)
    : table_(0), target_(target) {
    validate(e, schema);
    if (bit_qubits.size() != schema.num_bits()) {
        throw Error(ErrorKind::Argument, "oracle qubit map does not match the schema width");
    }
    std::set<std::string> names;
    collect_fields(e, names);

    std::vector<Field> used;
    for (const auto& f : schema.fields()) {
        if (!names.count(f.name)) continue;
        used.push_back(f);
        const Qubit first = schema.field_offset(schema.field_index(f.name));
        for (unsigned b = 0; b < f.width; ++b) var_qubits_.push_back(bit_qubits[first + b]);
    }

    if (used.empty()) {
        table_.set(0, bind(e, nullptr).eval(0));
    } else {
        table_ = truth_table(e, TableSchema(schema.name(), std::move(used)));
    }

    gate_path_ = table_.num_vars() <= kGateOracleVarLimit;
    if (gate_path_) gates_ = compile_to_cnots(to_reed_muller(table_), var_qubits_, target_);
}

void Oracle::apply(StateVector& s, std::span<const Qubit> neg_controls) const {
    if (gate_path_) {
        apply_oracle(s, gates_, neg_controls);
    } else {
        apply_oracle(s, table_, var_qubits_, target_, neg_controls);
    }
}

}  // namespace qqldb
