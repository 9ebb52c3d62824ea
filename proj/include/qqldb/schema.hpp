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

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qqldb/gates.hpp"

namespace qqldb {

struct Field {
    std::string name;
    unsigned width = 1;  // bits

    friend bool operator==(const Field&, const Field&) = default;
};

/// One value per schema field, in schema order.
struct Record {
    std::vector<std::uint64_t> values;

    friend auto operator<=>(const Record&, const Record&) = default;
};

/// Fixed-width unsigned fields packed into the data qubits. The first field
/// occupies the leading qubits and each value is written most significant
/// bit first, so a record's basis index is the concatenation of its fields.
class TableSchema {
public:
    TableSchema(std::string name, std::vector<Field> fields);

    const std::string& name() const { return name_; }
    const std::vector<Field>& fields() const { return fields_; }
    /// Total width n: the number of data qubits.
    unsigned num_bits() const { return num_bits_; }
    BasisIndex num_records() const { return BasisIndex{1} << num_bits_; }

    std::optional<std::size_t> find_field(std::string_view name) const;
    /// Throws ErrorKind::Schema for unknown names.
    std::size_t field_index(std::string_view name) const;
    /// Qubit holding the most significant bit of field i.
    Qubit field_offset(std::size_t i) const { return offsets_[i]; }
    /// Qubit holding bit `bit` of a field, where bit 0 is the least
    /// significant bit of the value.
    Qubit bit_qubit(std::string_view field, unsigned bit) const;

    BasisIndex encode(const Record& r) const;
    Record decode(BasisIndex index) const;
    std::uint64_t field_value(BasisIndex index, std::size_t field) const;

    /// "|011>" rendering of a data index.
    std::string ket(BasisIndex index) const;
    /// "a=1 b=3" rendering.
    std::string describe(const Record& r) const;

    friend bool operator==(const TableSchema&, const TableSchema&) = default;

private:
    std::string name_;
    std::vector<Field> fields_;
    std::vector<Qubit> offsets_;
    unsigned num_bits_ = 0;
};

/// Renders `index` as a binary ket of `width` bits, e.g. "|0101>".
std::string ket_string(BasisIndex index, unsigned width);

}  // namespace qqldb
