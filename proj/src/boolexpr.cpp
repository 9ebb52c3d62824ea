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

#include "qqldb/boolexpr.hpp"

#include <fmt/format.h>
#include <vector>

#include "qqldb/error.hpp"

namespace qqldb {

struct BoolExpr::Node {
    Kind kind;
    std::string field;
    CompareOp op = CompareOp::Eq;
    std::uint64_t literal = 0;
    bool value = false;
    std::vector<BoolExpr> children;
};

std::string_view to_string(CompareOp op) {
    switch (op) {
        case CompareOp::Gt: return ">";
        case CompareOp::Ge: return ">=";
        case CompareOp::Lt: return "<";
        case CompareOp::Le: return "<=";
        case CompareOp::Eq: return "=";
        case CompareOp::Ne: return "!=";
    }
    return "?";
}

BoolExpr BoolExpr::compare(std::string field, CompareOp op, std::uint64_t literal) {
    return BoolExpr(std::make_shared<const Node>(Node{Kind::Comparison, std::move(field), op, literal, false, {}}));
}

BoolExpr BoolExpr::both(BoolExpr lhs, BoolExpr rhs) {
    return BoolExpr(std::make_shared<const Node>(
        Node{Kind::And, {}, CompareOp::Eq, 0, false, {std::move(lhs), std::move(rhs)}}));
}

BoolExpr BoolExpr::either(BoolExpr lhs, BoolExpr rhs) {
    return BoolExpr(std::make_shared<const Node>(
        Node{Kind::Or, {}, CompareOp::Eq, 0, false, {std::move(lhs), std::move(rhs)}}));
}

BoolExpr BoolExpr::negate(BoolExpr operand) {
    return BoolExpr(
        std::make_shared<const Node>(Node{Kind::Not, {}, CompareOp::Eq, 0, false, {std::move(operand)}}));
}

BoolExpr BoolExpr::constant(bool value) {
    return BoolExpr(std::make_shared<const Node>(Node{Kind::Const, {}, CompareOp::Eq, 0, value, {}}));
}

BoolExpr::Kind BoolExpr::kind() const { return node_->kind; }
const std::string& BoolExpr::field() const { return node_->field; }
CompareOp BoolExpr::op() const { return node_->op; }
std::uint64_t BoolExpr::literal() const { return node_->literal; }
bool BoolExpr::value() const { return node_->value; }

const BoolExpr& BoolExpr::lhs() const { return node_->children.at(0); }
const BoolExpr& BoolExpr::rhs() const { return node_->children.at(1); }

bool operator==(const BoolExpr& a, const BoolExpr& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case BoolExpr::Kind::Comparison:
            return a.field() == b.field() && a.op() == b.op() && a.literal() == b.literal();
        case BoolExpr::Kind::Const: return a.value() == b.value();
        case BoolExpr::Kind::Not: return a.operand() == b.operand();
        case BoolExpr::Kind::And:
        case BoolExpr::Kind::Or: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    }
    return false;
}

bool compare_values(std::uint64_t value, CompareOp op, std::uint64_t literal) {
    switch (op) {
        case CompareOp::Gt: return value > literal;
        case CompareOp::Ge: return value >= literal;
        case CompareOp::Lt: return value < literal;
        case CompareOp::Le: return value <= literal;
        case CompareOp::Eq: return value == literal;
        case CompareOp::Ne: return value != literal;
    }
    return false;
}

void validate(const BoolExpr& e, const TableSchema& schema) {
    switch (e.kind()) {
        case BoolExpr::Kind::Comparison: {
            const auto& f = schema.fields()[schema.field_index(e.field())];
            if (f.width < 64 && (e.literal() >> f.width)) {
                throw Error(ErrorKind::Schema,
                            fmt::format("literal {} does not fit the {}-bit field '{}'", e.literal(), f.width, f.name));
            }
            return;
        }
        case BoolExpr::Kind::Const: return;
        case BoolExpr::Kind::Not: validate(e.operand(), schema); return;
        case BoolExpr::Kind::And:
        case BoolExpr::Kind::Or:
            validate(e.lhs(), schema);
            validate(e.rhs(), schema);
            return;
    }
}

bool eval_expr(const BoolExpr& e, const TableSchema& schema, const Record& record) {
    switch (e.kind()) {
        case BoolExpr::Kind::Comparison: {
            const std::size_t i = schema.field_index(e.field());
            if (i >= record.values.size()) throw Error(ErrorKind::Schema, "record does not conform to the schema");
            return compare_values(record.values[i], e.op(), e.literal());
        }
        case BoolExpr::Kind::Const: return e.value();
        case BoolExpr::Kind::Not: return !eval_expr(e.operand(), schema, record);
        case BoolExpr::Kind::And: return eval_expr(e.lhs(), schema, record) && eval_expr(e.rhs(), schema, record);
        case BoolExpr::Kind::Or: return eval_expr(e.lhs(), schema, record) || eval_expr(e.rhs(), schema, record);
    }
    return false;
}

namespace {

// Binding strength: OR < AND < NOT < atom.
int precedence(const BoolExpr& e) {
    switch (e.kind()) {
        case BoolExpr::Kind::Or: return 1;
        case BoolExpr::Kind::And: return 2;
        case BoolExpr::Kind::Not: return 3;
        default: return 4;
    }
}

void render(const BoolExpr& e, std::string& out);

void render_child(const BoolExpr& child, int min_prec, std::string& out) {
    if (precedence(child) < min_prec) {
        out += '(';
        render(child, out);
        out += ')';
    } else {
        render(child, out);
    }
}

void render(const BoolExpr& e, std::string& out) {
    switch (e.kind()) {
        case BoolExpr::Kind::Comparison:
            if (e.op() == CompareOp::Ne && e.literal() == 0) {
                out += e.field();
            } else {
                out += fmt::format("{} {} {}", e.field(), to_string(e.op()), e.literal());
            }
            return;
        case BoolExpr::Kind::Const: out += e.value() ? "TRUE" : "FALSE"; return;
        case BoolExpr::Kind::Not:
            out += "NOT ";
            render_child(e.operand(), 3, out);
            return;
        case BoolExpr::Kind::And:
            // Chains associate to the left, so a right operand of equal
            // precedence needs parentheses to round-trip.
            render_child(e.lhs(), 2, out);
            out += " AND ";
            render_child(e.rhs(), 3, out);
            return;
        case BoolExpr::Kind::Or:
            render_child(e.lhs(), 1, out);
            out += " OR ";
            render_child(e.rhs(), 2, out);
            return;
    }
}

}  // namespace

std::string to_string(const BoolExpr& e) {
    std::string out;
    render(e, out);
    return out;
}

}  // namespace qqldb
