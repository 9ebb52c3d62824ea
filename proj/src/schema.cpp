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

#include "qqldb/schema.hpp"

#include <fmt/format.h>
#include <set>

#include "qqldb/error.hpp"

namespace qqldb {

// Widths beyond this cannot be simulated anyway and keep shifts well defined.
static constexpr unsigned kMaxSchemaBits = 62;

TableSchema::TableSchema(std::string name, std::vector<Field> fields)
    : name_(std::move(name)), fields_(std::move(fields)) {
    if (fields_.empty()) throw Error(ErrorKind::Schema, "a table needs at least one field");
    std::set<std::string_view> names;
    for (const auto& f : fields_) {
        if (f.width < 1) throw Error(ErrorKind::Schema, fmt::format("field '{}' must be at least 1 bit wide", f.name));
        if (!names.insert(f.name).second) throw Error(ErrorKind::Schema, fmt::format("duplicate field '{}'", f.name));
        offsets_.push_back(num_bits_);
        num_bits_ += f.width;
        if (num_bits_ > kMaxSchemaBits) throw Error(ErrorKind::Capacity, "schema is wider than 62 bits");
    }
}

std::optional<std::size_t> TableSchema::find_field(std::string_view name) const {
    for (std::size_t i = 0; i < fields_.size(); ++i)
        if (fields_[i].name == name) return i;
    return std::nullopt;
}

std::size_t TableSchema::field_index(std::string_view name) const {
    if (auto i = find_field(name)) return *i;
    throw Error(ErrorKind::Schema, fmt::format("unknown field '{}' in table '{}'", name, name_));
}

Qubit TableSchema::bit_qubit(std::string_view field, unsigned bit) const {
    const std::size_t i = field_index(field);
    if (bit >= fields_[i].width) {
        throw Error(ErrorKind::Schema,
                    fmt::format("bit {} out of range for {}-bit field '{}'", bit, fields_[i].width, field));
    }
    return offsets_[i] + fields_[i].width - 1 - bit;
}

BasisIndex TableSchema::encode(const Record& r) const {
    if (r.values.size() != fields_.size()) {
        throw Error(ErrorKind::Schema,
                    fmt::format("record has {} values, table '{}' has {} fields", r.values.size(), name_, fields_.size()));
    }
    BasisIndex index = 0;
    for (std::size_t i = 0; i < fields_.size(); ++i) {
        const unsigned w = fields_[i].width;
        if (r.values[i] >> w) {
            throw Error(ErrorKind::Schema,
                        fmt::format("value {} does not fit the {}-bit field '{}'", r.values[i], w, fields_[i].name));
        }
        index = (index << w) | r.values[i];
    }
    return index;
}

std::uint64_t TableSchema::field_value(BasisIndex index, std::size_t field) const {
    const unsigned w = fields_[field].width;
    const unsigned shift = num_bits_ - offsets_[field] - w;
    return (index >> shift) & ((std::uint64_t{1} << w) - 1);
}

Record TableSchema::decode(BasisIndex index) const {
    Record r;
    r.values.reserve(fields_.size());
    for (std::size_t i = 0; i < fields_.size(); ++i) r.values.push_back(field_value(index, i));
    return r;
}

std::string TableSchema::ket(BasisIndex index) const { return ket_string(index, num_bits_); }

std::string TableSchema::describe(const Record& r) const {
    std::string out;
    for (std::size_t i = 0; i < fields_.size() && i < r.values.size(); ++i) {
        if (i) out += ' ';
        out += fmt::format("{}={}", fields_[i].name, r.values[i]);
    }
    return out;
}

std::string ket_string(BasisIndex index, unsigned width) {
    std::string bits(width, '0');
    for (unsigned b = 0; b < width; ++b)
        if ((index >> (width - 1 - b)) & 1U) bits[b] = '1';
    return "|" + bits + ">";
}

}  // namespace qqldb
