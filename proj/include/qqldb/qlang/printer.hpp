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
#include <string>

#include "qqldb/qlang/ast.hpp"

namespace qqldb::qlang {

std::string to_qql(const RecordLit& r);
std::string to_qql(const GateSpec& g);
/// Canonical text of one statement, including the trailing ';'.
std::string to_qql(const Command& c);
/// One statement per line.
std::string to_qql(std::span<const Statement> script);

/// Double-quoted with '"' and '\' escaped.
std::string quote(std::string_view s);

}  // namespace qqldb::qlang
