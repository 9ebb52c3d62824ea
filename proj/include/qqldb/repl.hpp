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

#include <filesystem>
#include <iosfwd>
#include <string_view>

#include "qqldb/session.hpp"

namespace qqldb {

inline constexpr int kExitOk = 0;
inline constexpr int kExitScriptError = 1;
inline constexpr int kExitUsage = 2;

struct ReplOptions {
    bool prompt = true;
};

/// Reads statements until end of input. Text is buffered until a ';' closes
/// a statement; errors are reported on `err` and the loop carries on.
int repl_loop(std::istream& in, std::ostream& out, std::ostream& err, Session& session, ReplOptions opts = {});

/// Runs a whole script. The first failing statement stops it with status 1.
int run_script_text(std::string_view text, Session& session, std::ostream& out, std::ostream& err);
int run_script(const std::filesystem::path& path, Session& session, std::ostream& out, std::ostream& err);

}  // namespace qqldb
