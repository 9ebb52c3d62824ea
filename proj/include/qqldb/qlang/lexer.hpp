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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace qqldb::qlang {

enum class TokenKind { Keyword, Identifier, Integer, Ket, Operator, Punctuation, String, End };

std::string_view to_string(TokenKind kind);

struct SourcePos {
    unsigned line = 1;
    unsigned column = 1;

    friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

/// Keywords carry their upper-case spelling in `text`; ket literals keep only
/// the bits ("011"); strings hold the unescaped contents.
struct Token {
    TokenKind kind;
    std::string text;
    SourcePos pos;
    std::size_t offset = 0;  // byte range in the source
    std::size_t length = 0;
};

bool is_keyword(std::string_view upper);

/// The stream always ends with one End token. Illegal input throws a Syntax
/// error whose message starts with "line:column:".
std::vector<Token> tokenize(std::string_view text);

}  // namespace qqldb::qlang
