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

#include "qqldb/error.hpp"

namespace qqldb {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Capacity: return "capacity error";
        case ErrorKind::Validation: return "validation error";
        case ErrorKind::Argument: return "argument error";
        case ErrorKind::ImpossibleOutcome: return "impossible outcome";
        case ErrorKind::Schema: return "schema error";
        case ErrorKind::State: return "state error";
        case ErrorKind::Syntax: return "syntax error";
        case ErrorKind::Version: return "version error";
        case ErrorKind::Format: return "format error";
        case ErrorKind::Io: return "i/o error";
    }
    return "error";
}

}  // namespace qqldb
