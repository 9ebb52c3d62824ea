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

#include <functional>
#include <string>

#include "qqldb/qlang/ast.hpp"
#include "qqldb/schema.hpp"

namespace qqldb {
class Session;
}

namespace qqldb::qlang {

/// Ket width must equal n; tuples must assign every field exactly once.
BasisIndex resolve_record(const RecordLit& r, const TableSchema& schema);

TableSchema resolve_schema(const CreateTable& c);

/// Bound statement ready to run; returns its printable output.
using Action = std::function<std::string(Session&)>;

/// Binds names and literals against the session's open table. Throws Schema
/// errors for unknown fields, width overflow or a missing table.
Action compile(const Command& c, const Session& session);

}  // namespace qqldb::qlang
