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

#include "support.hpp"

#include <algorithm>

namespace qqldb::testing {

Amps random_amplitudes(std::mt19937_64& rng, std::size_t size, double zero_fraction) {
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> unit;
    Amps v(size);
    double norm = 0.0;
    while (norm == 0.0) {
        for (auto& a : v) {
            a = unit(rng) < zero_fraction ? Amplitude{} : Amplitude{gauss(rng), gauss(rng)};
            norm += std::norm(a);
        }
    }
    for (auto& a : v) a /= std::sqrt(norm);
    return v;
}

Matrix kron_all(const std::vector<Matrix>& factors) {
    Matrix out;
    for (const Matrix& f : factors) out = kron(out, f);
    return out;
}

Matrix h2() {
    const double r = 1.0 / std::sqrt(2.0);
    return Matrix(1, {r, r, r, -r});
}
Matrix x2() { return Matrix(1, {0.0, 1.0, 1.0, 0.0}); }
Matrix i2() { return Matrix::identity(1); }

Matrix projector(unsigned bits, BasisIndex value) {
    Matrix p(bits);
    p(value, value) = 1.0;
    return p;
}

double max_diff(std::span<const Amplitude> a, std::span<const Amplitude> b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

std::set<BasisIndex> support_of(std::span<const Amplitude> amps, double tol) {
    std::set<BasisIndex> s;
    for (BasisIndex i = 0; i < amps.size(); ++i) {
        if (std::abs(amps[i]) > tol) s.insert(i);
    }
    return s;
}

BoolExpr random_expr(std::mt19937_64& rng, const TableSchema& schema, int depth) {
    std::uniform_int_distribution<int> pick(0, 9);
    const int k = depth > 0 ? pick(rng) : 0;
    if (k <= 4) {
        const auto& fields = schema.fields();
        const Field& f = fields[std::uniform_int_distribution<std::size_t>(0, fields.size() - 1)(rng)];
        const std::uint64_t lit =
            std::uniform_int_distribution<std::uint64_t>(0, (std::uint64_t{1} << f.width) - 1)(rng);
        const auto op = static_cast<CompareOp>(std::uniform_int_distribution<int>(0, 5)(rng));
        return BoolExpr::compare(f.name, op, lit);
    }
    if (k == 5) return BoolExpr::negate(random_expr(rng, schema, depth - 1));
    if (k <= 7) return BoolExpr::both(random_expr(rng, schema, depth - 1), random_expr(rng, schema, depth - 1));
    return BoolExpr::either(random_expr(rng, schema, depth - 1), random_expr(rng, schema, depth - 1));
}

TableSchema random_schema(std::mt19937_64& rng, unsigned min_bits, unsigned max_bits) {
    const unsigned total = std::uniform_int_distribution<unsigned>(min_bits, max_bits)(rng);
    std::vector<Field> fields;
    unsigned left = total;
    while (left > 0) {
        const unsigned w = std::uniform_int_distribution<unsigned>(1, std::min(left, 3u))(rng);
        fields.push_back(Field{"f" + std::to_string(fields.size()), w});
        left -= w;
    }
    return TableSchema("t", fields);
}

bool eval_on_index(const BoolExpr& e, const TableSchema& schema, BasisIndex index) {
    switch (e.kind()) {
        case BoolExpr::Kind::Const: return e.value();
        case BoolExpr::Kind::Not: return !eval_on_index(e.operand(), schema, index);
        case BoolExpr::Kind::And:
            return eval_on_index(e.lhs(), schema, index) && eval_on_index(e.rhs(), schema, index);
        case BoolExpr::Kind::Or:
            return eval_on_index(e.lhs(), schema, index) || eval_on_index(e.rhs(), schema, index);
        case BoolExpr::Kind::Comparison: break;
    }
    // Fields are laid out most significant first; walk them from the end.
    std::uint64_t value = 0;
    unsigned shift = 0;
    const auto& fields = schema.fields();
    for (std::size_t i = fields.size(); i-- > 0;) {
        if (fields[i].name == e.field()) {
            value = (index >> shift) & ((std::uint64_t{1} << fields[i].width) - 1);
            break;
        }
        shift += fields[i].width;
    }
    const std::uint64_t l = e.literal();
    switch (e.op()) {
        case CompareOp::Gt: return value > l;
        case CompareOp::Ge: return value >= l;
        case CompareOp::Lt: return value < l;
        case CompareOp::Le: return value <= l;
        case CompareOp::Eq: return value == l;
        case CompareOp::Ne: return value != l;
    }
    return false;
}

Matrix dense_oracle(const std::vector<bool>& f, unsigned n) {
    Matrix m(n + 1);
    for (BasisIndex x = 0; x < (BasisIndex{1} << n); ++x) {
        for (BasisIndex y = 0; y < 2; ++y) {
            const BasisIndex col = (x << 1) | y;
            const BasisIndex row = (x << 1) | (y ^ static_cast<BasisIndex>(f[x]));
            m(row, col) = 1.0;
        }
    }
    return m;
}

namespace {

Matrix add(const Matrix& a, const Matrix& b) {
    Matrix m(a.num_qubits());
    for (std::size_t r = 0; r < a.dim(); ++r) {
        for (std::size_t c = 0; c < a.dim(); ++c) m(r, c) = a(r, c) + b(r, c);
    }
    return m;
}

// Sum of tensor terms written with the first factor on the least significant
// data bit, converted to this library's ordering by reversing each term.
Matrix lsb_first(const std::vector<std::vector<Matrix>>& terms) {
    Matrix out(static_cast<unsigned>(terms.front().size()));
    for (auto factors : terms) {
        std::reverse(factors.begin(), factors.end());
        out = add(out, kron_all(factors));
    }
    return out;
}

}  // namespace

Matrix insertion_step_literal(BasisIndex k) {
    const Matrix h = h2(), i = i2(), p0 = projector(1, 0), p1 = projector(1, 1);
    switch (k) {
        case 1: return lsb_first({{h, i, i}});
        case 2: return lsb_first({{p0, h, i}, {p1, i, i}});
        case 3: return lsb_first({{p0, i, i}, {p1, h, i}});
        default: break;
    }
    // |ab><ab| (x) H plus the identity on the other three patterns.
    const BasisIndex a = k & 1, b = (k >> 1) & 1;
    std::vector<std::vector<Matrix>> terms;
    for (BasisIndex u = 0; u < 2; ++u) {
        for (BasisIndex v = 0; v < 2; ++v) {
            terms.push_back({projector(1, u), projector(1, v), (u == a && v == b) ? h : i});
        }
    }
    return lsb_first(terms);
}

}  // namespace qqldb::testing
