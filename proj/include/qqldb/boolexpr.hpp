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
#include <memory>
#include <string>
#include <string_view>

#include "qqldb/schema.hpp"

namespace qqldb {

enum class CompareOp { Gt, Ge, Lt, Le, Eq, Ne };

std::string_view to_string(CompareOp op);

/// Relational predicate over named fields: comparisons against unsigned
/// literals combined with AND / OR / NOT, plus the constants 0 and 1.
/// Immutable; copies share structure.
class BoolExpr {
public:
    enum class Kind { Comparison, And, Or, Not, Const };

    static BoolExpr compare(std::string field, CompareOp op, std::uint64_t literal);
    /// Shorthand for `field != 0`; used for 1-bit flags.
    static BoolExpr var(std::string field) { return compare(std::move(field), CompareOp::Ne, 0); }
    static BoolExpr both(BoolExpr lhs, BoolExpr rhs);
    static BoolExpr either(BoolExpr lhs, BoolExpr rhs);
    static BoolExpr negate(BoolExpr operand);
    static BoolExpr constant(bool value);

    Kind kind() const;

    const std::string& field() const;
    CompareOp op() const;
    std::uint64_t literal() const;
    bool value() const;
    const BoolExpr& lhs() const;
    const BoolExpr& rhs() const;
    const BoolExpr& operand() const { return lhs(); }

    friend bool operator==(const BoolExpr& a, const BoolExpr& b);

private:
    struct Node;
    explicit BoolExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

bool compare_values(std::uint64_t value, CompareOp op, std::uint64_t literal);

/// Throws ErrorKind::Schema if a field is unknown or a literal does not fit
/// its field's width.
void validate(const BoolExpr& e, const TableSchema& schema);

/// Classical evaluation on a record, comparing unsigned field values.
bool eval_expr(const BoolExpr& e, const TableSchema& schema, const Record& record);

/// Query-language rendering; the parser reads it back to an identical tree.
std::string to_string(const BoolExpr& e);

}  // namespace qqldb
