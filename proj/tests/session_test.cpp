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

#include <gtest/gtest.h>

#include <bit>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qqldb/error.hpp"
#include "qqldb/repl.hpp"
#include "qqldb/session.hpp"

using namespace qqldb;

namespace {

const char* kBackupDemo =
    "CREATE TABLE t (x:2) TEMP 1;\n"
    "INSERT ALL 2;\n"
    "BACKUP WHERE x = 3;\n"
    "SHOW;\n";

std::size_t count_lines_with(const std::string& text, const std::string& needle) {
    std::size_t count = 0;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) count += line.find(needle) != std::string::npos;
    return count;
}

std::string run(std::string_view script, SessionConfig config = {}) {
    Session s(config);
    std::ostringstream out, err;
    EXPECT_EQ(run_script_text(script, s, out, err), kExitOk) << err.str();
    return out.str();
}

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("qqldb_session_test_" + name);
}

ErrorKind load_error(std::string_view text) {
    Session s;
    try {
        session_from_text(s, text);
    } catch (const Error& e) {
        EXPECT_FALSE(s.has_table());
        return e.kind();
    }
    ADD_FAILURE() << "loaded: " << text;
    return ErrorKind::Io;
}

}  // namespace

TEST(Session, ShowFreshTable) {
    const std::string out = run("CREATE TABLE t (x:3);\nSHOW;");
    EXPECT_NE(out.find("1 rows, total probability 1.000000"), std::string::npos) << out;
    EXPECT_EQ(count_lines_with(out, "|000>"), 1u);
}

TEST(Session, SequentialPipelineShowsEightRows) {
    const std::string out = run("CREATE TABLE t (x:3) TEMP 1;\nINSERT SEQ 7;\nSHOW;");
    EXPECT_NE(out.find("8 rows, total probability 1.000000"), std::string::npos) << out;
    EXPECT_EQ(count_lines_with(out, "0.125000"), 8u);
}

TEST(Session, BackupDemoTranscript) {
    const std::string out = run(kBackupDemo);
    EXPECT_EQ(count_lines_with(out, " 0.25 "), 3u) << out;
    EXPECT_EQ(count_lines_with(out, " 0.75 "), 1u);
    EXPECT_EQ(count_lines_with(out, " -0.5 "), 1u);
    EXPECT_NE(out.find("M=1"), std::string::npos);
}

TEST(Session, ShowFullPrintsRoundTripDigits) {
    const std::string out = run("CREATE TABLE t (x:1) TEMP 1;\nINSERT ALL 1;\nSHOW FULL;");
    EXPECT_NE(out.find("0.70710678118654746"), std::string::npos) << out;
}

TEST(Session, DeleteReportsProbability) {
    const std::string out = run("CREATE TABLE t (x:2) TEMP 1;\nINSERT ALL 2;\nDELETE WHERE x = 3;");
    EXPECT_NE(out.find("success probability 0.750000"), std::string::npos) << out;
    EXPECT_NE(out.find("live records: 3"), std::string::npos);
}

TEST(Session, EmptyScript) {
    Session s;
    std::ostringstream out, err;
    EXPECT_EQ(run_script_text("", s, out, err), kExitOk);
    EXPECT_TRUE(out.str().empty());
    EXPECT_TRUE(err.str().empty());
}

TEST(Session, CapacityViolationStopsScript) {
    Session s(SessionConfig{8, 0, 1e-12});
    std::ostringstream out, err;
    EXPECT_EQ(run_script_text("CREATE TABLE t (x:6) TEMP 3;\nSHOW;", s, out, err), kExitScriptError);
    EXPECT_NE(err.str().find("1:1:"), std::string::npos) << err.str();
    EXPECT_TRUE(out.str().empty());
}

TEST(Session, ScriptStopsAtFirstError) {
    Session s;
    std::ostringstream out, err;
    EXPECT_EQ(run_script_text("CREATE TABLE t (x:2);\nRESTORE;\nSHOW;", s, out, err), kExitScriptError);
    EXPECT_NE(err.str().find("2:1:"), std::string::npos) << err.str();
    EXPECT_EQ(out.str().find("rows"), std::string::npos);
}

TEST(Repl, ErrorsDoNotStopTheLoop) {
    Session s;
    std::istringstream in("CREATE TABLE t (x:3);\nSELEKT;\nSHOW;\nDELETE WHERE y = 1;\nSHOW\n;\n");
    std::ostringstream out, err;
    EXPECT_EQ(repl_loop(in, out, err, s, ReplOptions{false}), kExitOk);
    EXPECT_NE(err.str().find("error: 2:1:"), std::string::npos) << err.str();
    EXPECT_NE(err.str().find("error: 4:1: unknown field 'y'"), std::string::npos) << err.str();
    EXPECT_EQ(count_lines_with(out.str(), "1 rows"), 2u) << out.str();
}

TEST(Repl, StatementsSpanLinesAndShareLines) {
    Session s;
    std::istringstream in("CREATE TABLE t\n  (x:2); INSERT ALL\n2; SHOW; -- trailing ; in a comment\n");
    std::ostringstream out, err;
    EXPECT_EQ(repl_loop(in, out, err, s, ReplOptions{false}), kExitOk);
    EXPECT_TRUE(err.str().empty()) << err.str();
    EXPECT_NE(out.str().find("4 rows"), std::string::npos) << out.str();
}

TEST(Repl, IncompleteTrailingStatement) {
    Session s;
    std::istringstream in("CREATE TABLE t (x:2);\nSHOW");
    std::ostringstream out, err;
    repl_loop(in, out, err, s, ReplOptions{false});
    EXPECT_NE(err.str().find("incomplete statement"), std::string::npos) << err.str();
}

TEST(Persistence, RoundTripIsBitExact) {
    Session a;
    a.execute_script("CREATE TABLE t (x:2) TEMP 2; INSERT ALL 2; BACKUP WHERE x = 3; SELECT c WHERE x = 1;");
    const auto path = temp_path("roundtrip.qdb");
    a.save(path);
    Session b;
    b.load(path);
    std::filesystem::remove(path);
    const auto& sa = a.database().state();
    const auto& sb = b.database().state();
    ASSERT_EQ(sa.size(), sb.size());
    // Only nonzero amplitudes are stored, so a signed zero comes back as +0.
    for (BasisIndex i = 0; i < sa.size(); ++i) {
        if (sa[i] == Amplitude(0.0)) {
            EXPECT_EQ(sb[i], Amplitude(0.0));
            continue;
        }
        EXPECT_EQ(std::bit_cast<std::uint64_t>(sa[i].real()), std::bit_cast<std::uint64_t>(sb[i].real()));
        EXPECT_EQ(std::bit_cast<std::uint64_t>(sa[i].imag()), std::bit_cast<std::uint64_t>(sb[i].imag()));
    }
    EXPECT_EQ(format_state(a.database(), true), format_state(b.database(), true));
    EXPECT_EQ(b.database().flags().size(), 1u);
    EXPECT_EQ(b.database().safe_key()->match_count, 1u);
    EXPECT_EQ(b.database().log(), a.database().log());
    EXPECT_EQ(session_to_text(a), session_to_text(b));
}

TEST(Persistence, RoundTripRandomAmplitudes) {
    Session a;
    a.execute_script("CREATE TABLE t (a:2, b:2) TEMP 2; INSERT SEQ 11; APPLY H @ b BIT 0 WHEN TRUE;");
    Session b;
    session_from_text(b, session_to_text(a));
    for (BasisIndex i = 0; i < a.database().state().size(); ++i) EXPECT_EQ(a.database().state()[i], b.database().state()[i]);
}

TEST(Persistence, FreshSessionSavesMetadataOnly) {
    Session s;
    EXPECT_EQ(session_to_text(s), "QQLDB 1\nSCHEMA none\n");
    Session t;
    t.execute_script("CREATE TABLE t (x:1);");
    session_from_text(t, session_to_text(s));
    EXPECT_FALSE(t.has_table());
}

TEST(Persistence, WrongVersion) {
    EXPECT_EQ(load_error("QQLDB 2\nSCHEMA none\n"), ErrorKind::Version);
    EXPECT_EQ(load_error("hello\n"), ErrorKind::Version);
}

TEST(Persistence, MalformedFiles) {
    EXPECT_EQ(load_error("QQLDB 1\n"), ErrorKind::Format);
    EXPECT_EQ(load_error("QQLDB 1\nSCHEMA t x:2\n"), ErrorKind::Format);
    EXPECT_EQ(load_error("QQLDB 1\nSCHEMA t x:2\nTEMP 1\nSAFE none\n9 0x1p+0 0x0p+0\n"), ErrorKind::Format);
    EXPECT_EQ(load_error("QQLDB 1\nSCHEMA t x:2\nTEMP 1\nSAFE none\n0 1.5 zz\n"), ErrorKind::Format);
    EXPECT_EQ(load_error("QQLDB 1\nSCHEMA t x:2\nTEMP 1\nSAFE none\n0 0x1p-1 0x0p+0\n"), ErrorKind::Format);
    EXPECT_EQ(load_error("QQLDB 1\nSCHEMA t x:2\nTEMP 1\nSAFE none\nBOGUS\n0 0x1p+0 0x0p+0\n"), ErrorKind::Format);
    EXPECT_EQ(load_error("QQLDB 1\nSCHEMA t x:30\nTEMP 3\nSAFE none\n0 0x1p+0 0x0p+0\n"), ErrorKind::Capacity);
}

TEST(Persistence, LoadFailureKeepsSession) {
    Session s;
    s.execute_script("CREATE TABLE t (x:2); INSERT ALL 1;");
    const std::string before = session_to_text(s);
    EXPECT_THROW(session_from_text(s, "QQLDB 1\nSCHEMA t x:2\nTEMP 1\n"), Error);
    EXPECT_EQ(session_to_text(s), before);
}

TEST(Determinism, SameSeedSameTranscript) {
    const char* script =
        "CREATE TABLE t (a:2, b:2) TEMP 3;\n"
        "INSERT ALL 4;\n"
        "SELECT c1 WHERE a = 1;\n"
        "APPLY H @ b BIT 1 WHEN c1;\n"
        "MEASURE 500;\n"
        "DELETE WHERE b >= 2 AMPLIFY 1;\n"
        "MEASURE 300;\n"
        "MEASURE 300 SEED 5;\n"
        "SHOW FULL;\n";
    const std::string a = run(script, SessionConfig{22, 42, 1e-12});
    const std::string b = run(script, SessionConfig{22, 42, 1e-12});
    EXPECT_EQ(a, b);
    EXPECT_NE(a, run(script, SessionConfig{22, 43, 1e-12}));
}

TEST(Determinism, MeasureSeedsAdvance) {
    Session s(SessionConfig{22, 9, 1e-12});
    const auto first = s.next_measure_seed();
    const auto second = s.next_measure_seed();
    EXPECT_NE(first, second);
    Session t(SessionConfig{22, 9, 1e-12});
    EXPECT_EQ(t.next_measure_seed(), first);
}

TEST(Persistence, RestoredKeySurvivesReload) {
    Session a;
    a.execute_script("CREATE TABLE t (x:2) TEMP 1; INSERT ALL 2; BACKUP WHERE x = 3; RESTORE;");
    const std::string text = session_to_text(a);
    EXPECT_NE(text.find("SAFE 2 1 restored x = 3\n"), std::string::npos) << text;
    Session b;
    session_from_text(b, text);
    EXPECT_TRUE(b.database().safe_key()->restored);
    EXPECT_THROW(b.execute_script("RESTORE;"), Error);
    b.execute_script("RESTORE PURGE;");
    EXPECT_FALSE(b.database().safe_key());
}
