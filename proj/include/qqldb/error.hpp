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

#include <stdexcept>
#include <string>
#include <string_view>

namespace qqldb {

enum class ErrorKind {
    Capacity,           // qubit count or dense-matrix limit exceeded
    Validation,         // non-unitary matrix, malformed amplitudes
    Argument,           // bad qubit lists, overlapping swaps, out-of-range values
    ImpossibleOutcome,  // post-selection onto an outcome with (near) zero probability
    Schema,             // unknown field, width overflow, missing table
    State,              // operation not valid in the current database state
    Syntax,             // QQL lexing/parsing
    Version,            // session file header mismatch
    Format,             // malformed session file
    Io,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace qqldb
