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

#include "qqldb/repl.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "qqldb/error.hpp"
#include "qqldb/qlang/lexer.hpp"
#include "qqldb/qlang/parser.hpp"

namespace qqldb {

namespace {

// Offset just past the last ';' that is outside strings and comments, or 0.
std::size_t complete_prefix(std::string_view text) {
    std::size_t end = 0;
    bool in_string = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_string) {
            if (c == '\\' && i + 1 < text.size()) {
                ++i;
            } else if (c == '"' || c == '\n') {
                in_string = false;
            }
        } else if (c == '"') {
            in_string = true;
        } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '-') {
            while (i < text.size() && text[i] != '\n') ++i;
        } else if (c == ';') {
            end = i + 1;
        }
    }
    return end;
}

// Prefix that makes positions in `chunk` line up with the whole input.
std::string aligned(std::string_view chunk, unsigned line, unsigned column) {
    return std::string(line - 1, '\n') + std::string(column - 1, ' ') + std::string(chunk);
}

void advance_pos(std::string_view text, unsigned& line, unsigned& column) {
    for (char c : text) {
        if (c == '\n') {
            ++line;
            column = 1;
        } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
            ++column;
        }
    }
}

}  // namespace

int repl_loop(std::istream& in, std::ostream& out, std::ostream& err, Session& session, ReplOptions opts) {
    std::string buffer;
    unsigned line = 1;
    unsigned column = 1;
    std::string input;
    while (true) {
        if (opts.prompt) out << (buffer.find_first_not_of(" \t\r\n") == std::string::npos ? "qqldb> " : "   ...> ") << std::flush;
        if (!std::getline(in, input)) break;
        buffer += input;
        buffer += '\n';
        const std::size_t cut = complete_prefix(buffer);
        if (cut == 0) continue;
        const std::string chunk = buffer.substr(0, cut);
        buffer.erase(0, cut);
        try {
            for (const auto& s : qlang::parse(aligned(chunk, line, column))) {
                try {
                    out << session.execute(s) << std::flush;
                } catch (const Error& e) {
                    err << "error: " << e.what() << "\n";
                }
            }
        } catch (const Error& e) {
            err << "error: " << e.what() << "\n";
        }
        advance_pos(chunk, line, column);
    }
    if (in.bad()) {
        err << "error: input failure\n";
        return kExitScriptError;
    }
    try {
        if (qlang::tokenize(aligned(buffer, line, column)).size() > 1) {
            err << "error: " << line << ":" << column << ": incomplete statement (missing ';')\n";
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
    }
    return kExitOk;
}

int run_script_text(std::string_view text, Session& session, std::ostream& out, std::ostream& err) {
    try {
        for (const auto& s : qlang::parse(text)) out << session.execute(s);
    } catch (const Error& e) {
        out << std::flush;
        err << "error: " << e.what() << "\n";
        return kExitScriptError;
    }
    return kExitOk;
}

int run_script(const std::filesystem::path& path, Session& session, std::ostream& out, std::ostream& err) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        err << "error: cannot read script " << path.string() << "\n";
        return kExitScriptError;
    }
    std::ostringstream text;
    text << f.rdbuf();
    return run_script_text(text.str(), session, out, err);
}

}  // namespace qqldb
