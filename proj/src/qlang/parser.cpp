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

#include "qqldb/qlang/parser.hpp"

#include <algorithm>
#include <charconv>
#include <fmt/format.h>
#include <set>

#include "qqldb/error.hpp"

namespace qqldb::qlang {

namespace {

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::toupper(static_cast<unsigned char>(x)) == std::toupper(static_cast<unsigned char>(y));
           });
}

std::string describe(const Token& t) {
    switch (t.kind) {
        case TokenKind::End: return "end of input";
        case TokenKind::Ket: return fmt::format("'|{}>'", t.text);
        case TokenKind::String: return fmt::format("string \"{}\"", t.text);
        case TokenKind::Integer: return fmt::format("integer {}", t.text);
        default: return fmt::format("'{}'", t.text);
    }
}

class Parser {
public:
    explicit Parser(std::span<const Token> tokens) : toks_(tokens) {
        if (toks_.empty() || toks_.back().kind != TokenKind::End) {
            throw Error(ErrorKind::Syntax, "token stream must end with an End token");
        }
    }

    std::vector<Statement> script() {
        std::vector<Statement> out;
        while (!check(TokenKind::End, "")) {
            out.push_back(statement());
            punct(";");
        }
        return out;
    }

    BoolExpr lone_expression() {
        BoolExpr e = expr();
        if (!check(TokenKind::End, "")) fail();
        return e;
    }

private:
    const Token& cur() const { return toks_[i_]; }

    // Records what would have been accepted here so errors can list it.
    bool check(TokenKind kind, std::string_view text, std::string_view label = {}) {
        const Token& t = cur();
        if (t.kind == kind && (text.empty() || t.text == text)) return true;
        if (!label.empty()) {
            expected_.insert(std::string(label));
        } else if (kind == TokenKind::End) {
            expected_.insert("end of input");
        } else if (!text.empty()) {
            expected_.insert(fmt::format("'{}'", text));
        } else {
            expected_.insert(std::string(to_string(kind)));
        }
        return false;
    }

    const Token& take() {
        expected_.clear();
        const Token& t = toks_[i_];
        if (t.kind != TokenKind::End) ++i_;
        return t;
    }

    [[noreturn]] void fail() const {
        std::vector<std::string> list(expected_.begin(), expected_.end());
        std::string want;
        for (std::size_t k = 0; k < list.size(); ++k) {
            if (k > 0) want += k + 1 == list.size() ? " or " : ", ";
            want += list[k];
        }
        throw Error(ErrorKind::Syntax, fmt::format("{}:{}: expected {}, found {}", cur().pos.line, cur().pos.column,
                                                   want.empty() ? "something else" : want, describe(cur())));
    }

    bool accept_keyword(std::string_view kw) {
        if (check(TokenKind::Keyword, kw)) {
            take();
            return true;
        }
        return false;
    }
    void keyword(std::string_view kw) {
        if (!accept_keyword(kw)) fail();
    }
    bool accept_punct(std::string_view p) {
        if (check(TokenKind::Punctuation, p)) {
            take();
            return true;
        }
        return false;
    }
    void punct(std::string_view p) {
        if (!accept_punct(p)) fail();
    }
    void op(std::string_view o) {
        if (!check(TokenKind::Operator, o)) fail();
        take();
    }
    std::string identifier() {
        if (!check(TokenKind::Identifier, "")) fail();
        return take().text;
    }
    bool check_contextual(std::string_view word) {
        if (cur().kind == TokenKind::Identifier && iequals(cur().text, word)) return true;
        expected_.insert(std::string(word));
        return false;
    }
    void contextual(std::string_view word) {
        if (!check_contextual(word)) fail();
        take();
    }
    std::uint64_t integer() {
        if (!check(TokenKind::Integer, "")) fail();
        std::uint64_t v = 0;
        const std::string& s = take().text;
        std::from_chars(s.data(), s.data() + s.size(), v);
        return v;
    }
    std::string string_lit() {
        if (!check(TokenKind::String, "")) fail();
        return take().text;
    }

    Statement statement() {
        const SourcePos pos = cur().pos;
        if (accept_keyword("CREATE")) return {create(), pos};
        if (accept_keyword("INSERT")) return {insert(), pos};
        if (accept_keyword("UPDATE")) return {update(), pos};
        if (accept_keyword("DELETE")) {
            keyword("WHERE");
            Delete d{expr(), std::nullopt};
            if (accept_keyword("AMPLIFY")) d.amplify = integer();
            return {d, pos};
        }
        if (accept_keyword("SELECT")) {
            std::string name = identifier();
            keyword("WHERE");
            return {Select{std::move(name), expr()}, pos};
        }
        if (accept_keyword("APPLY")) {
            GateSpec g = gate_spec();
            keyword("WHEN");
            return {Apply{std::move(g), expr()}, pos};
        }
        if (accept_keyword("BACKUP")) {
            keyword("WHERE");
            return {Backup{expr()}, pos};
        }
        if (accept_keyword("RESTORE")) return {Restore{accept_keyword("PURGE")}, pos};
        if (accept_keyword("MEASURE")) {
            Measure m{integer(), std::nullopt};
            if (accept_keyword("SEED")) m.seed = integer();
            return {m, pos};
        }
        if (accept_keyword("SHOW")) return {Show{accept_keyword("FULL")}, pos};
        if (accept_keyword("SAVE")) return {Save{string_lit()}, pos};
        if (accept_keyword("LOAD")) return {Load{string_lit()}, pos};
        fail();
    }

    Command create() {
        keyword("TABLE");
        CreateTable c;
        c.name = identifier();
        punct("(");
        do {
            FieldDecl f;
            f.name = identifier();
            punct(":");
            f.width = integer();
            c.fields.push_back(std::move(f));
        } while (accept_punct(","));
        punct(")");
        if (accept_keyword("TEMP")) c.temps = integer();
        return c;
    }

    Command insert() {
        if (accept_keyword("ALL")) return InsertAll{integer()};
        if (accept_keyword("SEQ")) return InsertSeq{integer()};
        if (accept_keyword("VALUES")) {
            InsertValues v;
            do {
                v.records.push_back(record());
            } while (accept_punct(","));
            return v;
        }
        fail();
    }

    Command update() {
        keyword("SET");
        Update u;
        do {
            RecordLit from = record();
            keyword("TO");
            u.pairs.emplace_back(std::move(from), record());
        } while (accept_punct(","));
        return u;
    }

    RecordLit record() {
        if (check(TokenKind::Ket, "", "ket literal")) return KetLiteral{take().text};
        if (!accept_punct("(")) fail();
        std::vector<FieldAssign> fields;
        do {
            FieldAssign a;
            a.field = identifier();
            op("=");
            a.value = integer();
            fields.push_back(std::move(a));
        } while (accept_punct(","));
        punct(")");
        return fields;
    }

    GateSpec gate_spec() {
        std::optional<SingleGate> single;
        if (accept_keyword("NOT")) {
            single = SingleGate::Not;
        } else if (check_contextual("H")) {
            take();
            single = SingleGate::H;
        } else if (check_contextual("SWAP")) {
            take();
            RecordSwap s{record(), {}};
            punct(",");
            s.second = record();
            return s;
        } else {
            fail();
        }
        op("@");
        // Optional filler word: "NOT @ FIELD a BIT 0".
        if (cur().kind == TokenKind::Identifier && iequals(cur().text, "FIELD") &&
            toks_[i_ + 1].kind == TokenKind::Identifier && toks_[i_ + 2].kind == TokenKind::Identifier &&
            iequals(toks_[i_ + 2].text, "BIT")) {
            take();
        }
        BitGate g{*single, identifier(), 0};
        contextual("BIT");
        g.bit = integer();
        return g;
    }

    BoolExpr expr() {
        BoolExpr e = conjunction();
        while (accept_keyword("OR")) e = BoolExpr::either(e, conjunction());
        return e;
    }

    BoolExpr conjunction() {
        BoolExpr e = negation();
        while (accept_keyword("AND")) e = BoolExpr::both(e, negation());
        return e;
    }

    BoolExpr negation() {
        if (accept_keyword("NOT")) return BoolExpr::negate(negation());
        return primary();
    }

    BoolExpr primary() {
        if (accept_punct("(")) {
            BoolExpr e = expr();
            punct(")");
            return e;
        }
        if (accept_keyword("TRUE")) return BoolExpr::constant(true);
        if (accept_keyword("FALSE")) return BoolExpr::constant(false);
        if (!check(TokenKind::Identifier, "")) fail();
        std::string field = take().text;
        static constexpr std::pair<std::string_view, CompareOp> kOps[] = {
            {">", CompareOp::Gt}, {">=", CompareOp::Ge}, {"<", CompareOp::Lt},
            {"<=", CompareOp::Le}, {"=", CompareOp::Eq}, {"!=", CompareOp::Ne},
        };
        for (const auto& [text, cmp] : kOps) {
            if (check(TokenKind::Operator, text)) {
                take();
                return BoolExpr::compare(std::move(field), cmp, integer());
            }
        }
        return BoolExpr::var(std::move(field));
    }

    std::span<const Token> toks_;
    std::size_t i_ = 0;
    std::set<std::string> expected_;
};

}  // namespace

std::vector<Statement> parse(std::span<const Token> tokens) { return Parser(tokens).script(); }

std::vector<Statement> parse(std::string_view text) {
    const auto tokens = tokenize(text);
    return parse(tokens);
}

BoolExpr parse_expression(std::string_view text) {
    const auto tokens = tokenize(text);
    return Parser(tokens).lone_expression();
}

}  // namespace qqldb::qlang
