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

#include <span>
#include <string_view>
#include <vector>

#include "qqldb/qlang/ast.hpp"
#include "qqldb/qlang/lexer.hpp"

namespace qqldb::qlang {

/// Parses a whole script. The first problem throws a Syntax error of the form
/// "line:column: expected X or Y, found Z".
std::vector<Statement> parse(std::span<const Token> tokens);
std::vector<Statement> parse(std::string_view text);

/// A lone WHERE-style expression with no trailing input.
BoolExpr parse_expression(std::string_view text);

}  // namespace qqldb::qlang
