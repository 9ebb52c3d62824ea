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

#include "qqldb/qlang/compile.hpp"

#include <fmt/format.h>
#include <set>

#include "qqldb/error.hpp"
#include "qqldb/qlang/printer.hpp"
#include "qqldb/session.hpp"

namespace qqldb::qlang {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr std::uint64_t kMaxFieldWidth = 62;

void flag_names(const BoolExpr& e, std::set<std::string>& out) {
    switch (e.kind()) {
        case BoolExpr::Kind::Comparison: out.insert(e.field()); break;
        case BoolExpr::Kind::And:
        case BoolExpr::Kind::Or:
            flag_names(e.lhs(), out);
            flag_names(e.rhs(), out);
            break;
        case BoolExpr::Kind::Not: flag_names(e.operand(), out); break;
        case BoolExpr::Kind::Const: break;
    }
}

std::string live_line(const Database& db) { return fmt::format("live records: {}\n", db.live_support().size()); }

const TableSchema& table(const Session& s) {
    if (!s.has_table()) throw Error(ErrorKind::Schema, "no table is open; CREATE TABLE or LOAD first");
    return s.database().schema();
}

}  // namespace

BasisIndex resolve_record(const RecordLit& r, const TableSchema& schema) {
    if (const auto* ket = std::get_if<KetLiteral>(&r)) {
        if (ket->bits.size() != schema.num_bits()) {
            throw Error(ErrorKind::Schema, fmt::format("ket |{}> has {} bits; table '{}' records have {}", ket->bits,
                                                       ket->bits.size(), schema.name(), schema.num_bits()));
        }
        BasisIndex index = 0;
        for (char c : ket->bits) index = (index << 1) | static_cast<BasisIndex>(c == '1');
        return index;
    }
    const auto& assigns = std::get<std::vector<FieldAssign>>(r);
    Record rec;
    rec.values.assign(schema.fields().size(), 0);
    std::vector<bool> seen(schema.fields().size(), false);
    for (const FieldAssign& a : assigns) {
        const std::size_t i = schema.field_index(a.field);
        if (seen[i]) throw Error(ErrorKind::Schema, fmt::format("field '{}' assigned twice", a.field));
        seen[i] = true;
        rec.values[i] = a.value;
    }
    for (std::size_t i = 0; i < seen.size(); ++i) {
        if (!seen[i]) throw Error(ErrorKind::Schema, fmt::format("record is missing field '{}'", schema.fields()[i].name));
    }
    return schema.encode(rec);
}

TableSchema resolve_schema(const CreateTable& c) {
    std::vector<Field> fields;
    for (const FieldDecl& f : c.fields) {
        if (f.width > kMaxFieldWidth) {
            throw Error(ErrorKind::Schema, fmt::format("field '{}' is {} bits wide", f.name, f.width));
        }
        fields.push_back(Field{f.name, static_cast<unsigned>(f.width)});
    }
    return TableSchema(c.name, std::move(fields));
}

Action compile(const Command& command, const Session& session) {
    return std::visit(
        Overloaded{
            [&](const CreateTable& c) -> Action {
                TableSchema schema = resolve_schema(c);
                const std::uint64_t t = c.temps.value_or(kDefaultTempQubits);
                if (t > 64) throw Error(ErrorKind::Capacity, fmt::format("TEMP {} is too many qubits", t));
                return [schema, t](Session& s) {
                    s.open(Database(schema, static_cast<unsigned>(t), s.database_config()));
                    const Database& db = s.database();
                    return fmt::format("created table {}: {} data + {} temp qubits\n", schema.name(),
                                       db.data_qubits(), db.temp_count());
                };
            },
            [&](const InsertAll& c) -> Action {
                const TableSchema& schema = table(session);
                if (c.exponent > schema.num_bits()) {
                    throw Error(ErrorKind::Argument,
                                fmt::format("INSERT ALL {} exceeds the {} data qubits", c.exponent, schema.num_bits()));
                }
                const auto r = static_cast<unsigned>(c.exponent);
                return [r](Session& s) {
                    s.database().insert_bulk(r);
                    return live_line(s.database());
                };
            },
            [&](const InsertSeq& c) -> Action {
                table(session);
                return [k = c.upto](Session& s) {
                    s.database().insert_sequential(k);
                    return live_line(s.database());
                };
            },
            [&](const InsertValues& c) -> Action {
                const TableSchema& schema = table(session);
                std::vector<BasisIndex> indices;
                for (const RecordLit& r : c.records) indices.push_back(resolve_record(r, schema));
                return [indices](Session& s) {
                    s.database().insert_indices(indices);
                    return live_line(s.database());
                };
            },
            [&](const Update& c) -> Action {
                const TableSchema& schema = table(session);
                std::vector<std::pair<BasisIndex, BasisIndex>> pairs;
                for (const auto& [from, to] : c.pairs) {
                    pairs.emplace_back(resolve_record(from, schema), resolve_record(to, schema));
                }
                return [pairs](Session& s) {
                    s.database().update_indices(pairs);
                    return live_line(s.database());
                };
            },
            [&](const Delete& c) -> Action {
                validate(c.where, table(session));
                if (c.amplify && *c.amplify > 1000) throw Error(ErrorKind::Argument, "AMPLIFY is limited to 1000 rounds");
                return [e = c.where, iters = static_cast<unsigned>(c.amplify.value_or(0))](Session& s) {
                    const double p = s.database().delete_where(e, iters);
                    return fmt::format("success probability {:.6f}\n", p) + live_line(s.database());
                };
            },
            [&](const Select& c) -> Action {
                validate(c.where, table(session));
                return [c](Session& s) {
                    const Qubit q = s.database().select(c.name, c.where);
                    return fmt::format("flag {} on temp qubit {}\n", c.name, q);
                };
            },
            [&](const Apply& c) -> Action {
                const TableSchema& schema = table(session);
                std::set<std::string> names;
                flag_names(c.when, names);
                const auto& flags = session.database().flags();
                for (const auto& n : names) {
                    const bool found =
                        std::any_of(flags.begin(), flags.end(), [&](const SelectFlag& f) { return f.name == n; });
                    if (!found) throw Error(ErrorKind::Schema, fmt::format("unknown select flag '{}'", n));
                }
                WhereAction action = std::visit(
                    Overloaded{
                        [&](const BitGate& g) -> WhereAction {
                            const std::size_t i = schema.field_index(g.field);
                            const unsigned width = schema.fields()[i].width;
                            if (g.bit >= width) {
                                throw Error(ErrorKind::Schema, fmt::format("field '{}' has no bit {} (width {})",
                                                                           g.field, g.bit, width));
                            }
                            const Qubit q = schema.bit_qubit(g.field, static_cast<unsigned>(g.bit));
                            return GateAction{g.gate == SingleGate::Not ? not_gate() : hadamard_gate(), {q}};
                        },
                        [&](const RecordSwap& w) -> WhereAction {
                            return SwapAction{resolve_record(w.first, schema), resolve_record(w.second, schema)};
                        },
                    },
                    c.gate);
                return [when = c.when, action = std::move(action)](Session& s) {
                    s.database().apply_where(when, action);
                    return live_line(s.database());
                };
            },
            [&](const Backup& c) -> Action {
                validate(c.where, table(session));
                return [e = c.where](Session& s) {
                    s.database().backup(e);
                    const SafeKey& key = *s.database().safe_key();
                    return fmt::format("safe key on temp qubit {}, M={}\n", key.qubit, key.match_count);
                };
            },
            [&](const Restore& c) -> Action {
                table(session);
                return [purge = c.purge](Session& s) {
                    s.database().restore(purge);
                    return live_line(s.database());
                };
            },
            [&](const Measure& c) -> Action {
                table(session);
                return [c](Session& s) {
                    const std::uint64_t seed = c.seed ? *c.seed : s.next_measure_seed();
                    const auto counts = s.database().measure_records(c.shots, seed);
                    return format_histogram(s.database(), counts);
                };
            },
            [&](const Show& c) -> Action {
                table(session);
                return [full = c.full](Session& s) { return format_state(s.database(), full); };
            },
            [&](const Save& c) -> Action {
                return [path = c.path](Session& s) {
                    s.save(path);
                    return fmt::format("saved {}\n", quote(path));
                };
            },
            [&](const Load& c) -> Action {
                return [path = c.path](Session& s) {
                    s.load(path);
                    return fmt::format("loaded {}\n", quote(path));
                };
            },
        },
        command);
}

}  // namespace qqldb::qlang
