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

#include "qqldb/qlang/printer.hpp"

#include <fmt/format.h>

namespace qqldb::qlang {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

template <typename T, typename Fn>
std::string join(const std::vector<T>& items, Fn&& fn) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i > 0) out += ", ";
        out += fn(items[i]);
    }
    return out;
}

}  // namespace

std::string quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string to_qql(const RecordLit& r) {
    return std::visit(Overloaded{
                          [](const KetLiteral& k) { return "|" + k.bits + ">"; },
                          [](const std::vector<FieldAssign>& fs) {
                              return "(" + join(fs, [](const FieldAssign& a) {
                                         return fmt::format("{}={}", a.field, a.value);
                                     }) + ")";
                          },
                      },
                      r);
}

std::string to_qql(const GateSpec& g) {
    return std::visit(Overloaded{
                          [](const BitGate& b) {
                              return fmt::format("{} @ {} BIT {}", b.gate == SingleGate::Not ? "NOT" : "H", b.field,
                                                 b.bit);
                          },
                          [](const RecordSwap& s) {
                              return fmt::format("SWAP {}, {}", to_qql(s.first), to_qql(s.second));
                          },
                      },
                      g);
}

std::string to_qql(const Command& c) {
    const std::string body = std::visit(
        Overloaded{
            [](const CreateTable& t) {
                std::string s = fmt::format("CREATE TABLE {} ({})", t.name, join(t.fields, [](const FieldDecl& f) {
                                                return fmt::format("{}:{}", f.name, f.width);
                                            }));
                if (t.temps) s += fmt::format(" TEMP {}", *t.temps);
                return s;
            },
            [](const InsertAll& i) { return fmt::format("INSERT ALL {}", i.exponent); },
            [](const InsertSeq& i) { return fmt::format("INSERT SEQ {}", i.upto); },
            [](const InsertValues& v) {
                return "INSERT VALUES " + join(v.records, [](const RecordLit& r) { return to_qql(r); });
            },
            [](const Update& u) {
                return "UPDATE SET " + join(u.pairs, [](const std::pair<RecordLit, RecordLit>& p) {
                           return to_qql(p.first) + " TO " + to_qql(p.second);
                       });
            },
            [](const Delete& d) {
                std::string s = "DELETE WHERE " + to_string(d.where);
                if (d.amplify) s += fmt::format(" AMPLIFY {}", *d.amplify);
                return s;
            },
            [](const Select& s) { return fmt::format("SELECT {} WHERE {}", s.name, to_string(s.where)); },
            [](const Apply& a) { return fmt::format("APPLY {} WHEN {}", to_qql(a.gate), to_string(a.when)); },
            [](const Backup& b) { return "BACKUP WHERE " + to_string(b.where); },
            [](const Restore& r) { return std::string(r.purge ? "RESTORE PURGE" : "RESTORE"); },
            [](const Measure& m) {
                std::string s = fmt::format("MEASURE {}", m.shots);
                if (m.seed) s += fmt::format(" SEED {}", *m.seed);
                return s;
            },
            [](const Show& s) { return std::string(s.full ? "SHOW FULL" : "SHOW"); },
            [](const Save& s) { return "SAVE " + quote(s.path); },
            [](const Load& l) { return "LOAD " + quote(l.path); },
        },
        c);
    return body + ";";
}

std::string to_qql(std::span<const Statement> script) {
    std::string out;
    for (const Statement& s : script) out += to_qql(s.command) + "\n";
    return out;
}

}  // namespace qqldb::qlang
