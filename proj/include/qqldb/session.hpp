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

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "qqldb/database.hpp"
#include "qqldb/qlang/ast.hpp"

namespace qqldb {

struct SessionConfig {
    unsigned max_qubits = kDefaultMaxQubits;
    std::uint64_t seed = 0;
    double epsilon = kDefaultEpsilon;
};

/// One open table plus the transcript of everything printed so far.
class Session {
public:
    explicit Session(SessionConfig config = {});

    const SessionConfig& config() const { return config_; }
    DatabaseConfig database_config() const { return DatabaseConfig{config_.max_qubits, config_.epsilon}; }

    bool has_table() const { return db_.has_value(); }
    /// Throws ErrorKind::Schema when no table is open.
    Database& database();
    const Database& database() const;
    void open(Database db) { db_ = std::move(db); }
    void close() { db_.reset(); }

    /// Runs one statement; errors carry its line:column.
    std::string execute(const qlang::Statement& s);
    /// Parses all of `text`, then runs the statements in order. Stops at the
    /// first error; output up to that point is already in the transcript.
    std::string execute_script(std::string_view text);

    /// Seed for a MEASURE without SEED: derived from the session seed and the
    /// number of such measurements so far.
    std::uint64_t next_measure_seed();

    const std::string& transcript() const { return transcript_; }

    void save(const std::filesystem::path& path) const;
    void load(const std::filesystem::path& path);

private:
    SessionConfig config_;
    std::optional<Database> db_;
    std::uint64_t measure_count_ = 0;
    std::string transcript_;
};

/// Session file text: "QQLDB 1" header, metadata lines, then one
/// "<index> <re> <im>" line per nonzero amplitude in hexadecimal floats.
std::string session_to_text(const Session& s);
/// Throws ErrorKind::Version for a foreign header, ErrorKind::Format for
/// anything malformed. Leaves the session untouched on failure.
void session_from_text(Session& s, std::string_view text);

std::string format_amplitude(Amplitude a, bool full = false);
std::string format_state(const Database& db, bool full = false);
std::string format_histogram(const Database& db, const std::map<Record, std::uint64_t>& counts);

}  // namespace qqldb
