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
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qqldb/boolexpr.hpp"
#include "qqldb/qlang/lexer.hpp"

namespace qqldb::qlang {

struct KetLiteral {
    std::string bits;  // "011", most significant bit first

    friend bool operator==(const KetLiteral&, const KetLiteral&) = default;
};

struct FieldAssign {
    std::string field;
    std::uint64_t value = 0;

    friend bool operator==(const FieldAssign&, const FieldAssign&) = default;
};

using RecordLit = std::variant<KetLiteral, std::vector<FieldAssign>>;

struct FieldDecl {
    std::string name;
    std::uint64_t width = 0;

    friend bool operator==(const FieldDecl&, const FieldDecl&) = default;
};

enum class SingleGate { Not, H };

/// NOT or H on one bit of a field (bit 0 = least significant).
struct BitGate {
    SingleGate gate = SingleGate::Not;
    std::string field;
    std::uint64_t bit = 0;

    friend bool operator==(const BitGate&, const BitGate&) = default;
};

struct RecordSwap {
    RecordLit first;
    RecordLit second;

    friend bool operator==(const RecordSwap&, const RecordSwap&) = default;
};

using GateSpec = std::variant<BitGate, RecordSwap>;

struct CreateTable {
    std::string name;
    std::vector<FieldDecl> fields;
    std::optional<std::uint64_t> temps;

    friend bool operator==(const CreateTable&, const CreateTable&) = default;
};

struct InsertAll {
    std::uint64_t exponent = 0;
    friend bool operator==(const InsertAll&, const InsertAll&) = default;
};

struct InsertSeq {
    std::uint64_t upto = 0;
    friend bool operator==(const InsertSeq&, const InsertSeq&) = default;
};

struct InsertValues {
    std::vector<RecordLit> records;
    friend bool operator==(const InsertValues&, const InsertValues&) = default;
};

struct Update {
    std::vector<std::pair<RecordLit, RecordLit>> pairs;
    friend bool operator==(const Update&, const Update&) = default;
};

struct Delete {
    BoolExpr where;
    std::optional<std::uint64_t> amplify;
    friend bool operator==(const Delete&, const Delete&) = default;
};

struct Select {
    std::string name;
    BoolExpr where;
    friend bool operator==(const Select&, const Select&) = default;
};

struct Apply {
    GateSpec gate;
    BoolExpr when;  // over SELECT flag names
    friend bool operator==(const Apply&, const Apply&) = default;
};

struct Backup {
    BoolExpr where;
    friend bool operator==(const Backup&, const Backup&) = default;
};

struct Restore {
    bool purge = false;
    friend bool operator==(const Restore&, const Restore&) = default;
};

struct Measure {
    std::uint64_t shots = 0;
    std::optional<std::uint64_t> seed;
    friend bool operator==(const Measure&, const Measure&) = default;
};

struct Show {
    bool full = false;
    friend bool operator==(const Show&, const Show&) = default;
};

struct Save {
    std::string path;
    friend bool operator==(const Save&, const Save&) = default;
};

struct Load {
    std::string path;
    friend bool operator==(const Load&, const Load&) = default;
};

using Command = std::variant<CreateTable, InsertAll, InsertSeq, InsertValues, Update, Delete, Select, Apply, Backup,
                             Restore, Measure, Show, Save, Load>;

struct Statement {
    Command command;
    SourcePos pos;  // position of the leading keyword
};

}  // namespace qqldb::qlang
