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

#include "qqldb/qlang/lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fmt/format.h>

#include "qqldb/error.hpp"

namespace qqldb::qlang {

namespace {

constexpr std::array<std::string_view, 30> kKeywords = {
    "CREATE", "TABLE",  "TEMP",  "INSERT",  "ALL",     "SEQ",    "VALUES", "UPDATE", "SET",  "TO",
    "DELETE", "WHERE",  "AMPLIFY", "SELECT", "APPLY",  "WHEN",   "BACKUP", "RESTORE", "PURGE", "MEASURE",
    "SEED",   "SHOW",   "FULL",  "SAVE",    "LOAD",    "AND",    "OR",     "NOT",    "TRUE", "FALSE",
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return c >= '0' && c <= '9'; }

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_blank();
            if (at_end()) break;
            out.push_back(next());
        }
        out.push_back(Token{TokenKind::End, "", pos_, i_, 0});
        return out;
    }

private:
    bool at_end() const { return i_ >= src_.size(); }
    char peek(std::size_t ahead = 0) const { return i_ + ahead < src_.size() ? src_[i_ + ahead] : '\0'; }

    void advance() {
        const char c = src_[i_++];
        if (c == '\n') {
            ++pos_.line;
            pos_.column = 1;
        } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
            ++pos_.column;  // columns count code points
        }
    }

    [[noreturn]] void fail(SourcePos at, const std::string& what) const {
        throw Error(ErrorKind::Syntax, fmt::format("{}:{}: {}", at.line, at.column, what));
    }

    void skip_blank() {
        while (!at_end()) {
            if (std::isspace(static_cast<unsigned char>(peek()))) {
                advance();
            } else if (peek() == '-' && peek(1) == '-') {
                while (!at_end() && peek() != '\n') advance();
            } else {
                return;
            }
        }
    }

    Token make(TokenKind kind, std::string text, SourcePos at, std::size_t start) const {
        return Token{kind, std::move(text), at, start, i_ - start};
    }

    Token next() {
        const SourcePos at = pos_;
        const std::size_t start = i_;
        const char c = peek();
        if (ident_start(c)) {
            while (!at_end() && ident_char(peek())) advance();
            std::string word(src_.substr(start, i_ - start));
            std::string upper = word;
            std::transform(upper.begin(), upper.end(), upper.begin(),
                           [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
            if (is_keyword(upper)) return make(TokenKind::Keyword, upper, at, start);
            return make(TokenKind::Identifier, word, at, start);
        }
        if (digit(c)) {
            while (!at_end() && digit(peek())) advance();
            if (ident_char(peek())) fail(pos_, fmt::format("unexpected '{}' after number", peek()));
            const std::string_view text = src_.substr(start, i_ - start);
            std::uint64_t value = 0;
            const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
            if (ec != std::errc{}) fail(at, fmt::format("integer {} is out of range", text));
            return make(TokenKind::Integer, std::to_string(value), at, start);
        }
        if (c == '|') {
            advance();
            std::string bits;
            while (peek() == '0' || peek() == '1') {
                bits.push_back(peek());
                advance();
            }
            if (bits.empty() || peek() != '>') fail(at, "malformed ket literal; expected |bits>");
            advance();
            return make(TokenKind::Ket, bits, at, start);
        }
        if (c == '"') return string_literal(at, start);
        switch (c) {
            case '(': case ')': case ',': case ';': case ':':
                advance();
                return make(TokenKind::Punctuation, std::string(1, c), at, start);
            case '=': case '@':
                advance();
                return make(TokenKind::Operator, std::string(1, c), at, start);
            case '<': case '>':
                advance();
                if (peek() == '=') {
                    advance();
                    return make(TokenKind::Operator, std::string{c, '='}, at, start);
                }
                return make(TokenKind::Operator, std::string(1, c), at, start);
            case '!':
                advance();
                if (peek() != '=') fail(at, "expected '!='");
                advance();
                return make(TokenKind::Operator, "!=", at, start);
            default:
                break;
        }
        if (static_cast<unsigned char>(c) >= 0x80) fail(at, "illegal non-ASCII character");
        fail(at, fmt::format("illegal character '{}'", c));
    }

    Token string_literal(SourcePos at, std::size_t start) {
        advance();
        std::string value;
        while (true) {
            if (at_end() || peek() == '\n') fail(at, "unterminated string");
            const char c = peek();
            advance();
            if (c == '"') break;
            if (c == '\\') {
                const char e = peek();
                if (e != '"' && e != '\\') fail(pos_, "only \\\" and \\\\ escapes are allowed in strings");
                advance();
                value.push_back(e);
            } else {
                value.push_back(c);
            }
        }
        return make(TokenKind::String, value, at, start);
    }

    std::string_view src_;
    std::size_t i_ = 0;
    SourcePos pos_;
};

}  // namespace

std::string_view to_string(TokenKind kind) {
    switch (kind) {
        case TokenKind::Keyword: return "keyword";
        case TokenKind::Identifier: return "identifier";
        case TokenKind::Integer: return "integer";
        case TokenKind::Ket: return "ket literal";
        case TokenKind::Operator: return "operator";
        case TokenKind::Punctuation: return "punctuation";
        case TokenKind::String: return "string";
        case TokenKind::End: return "end of input";
    }
    return "?";
}

bool is_keyword(std::string_view upper) {
    return std::find(kKeywords.begin(), kKeywords.end(), upper) != kKeywords.end();
}

std::vector<Token> tokenize(std::string_view text) { return Lexer(text).run(); }

}  // namespace qqldb::qlang
