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

#include "qqldb/session.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstdlib>
#include <fmt/format.h>
#include <fstream>
#include <set>
#include <sstream>

#include "qqldb/error.hpp"
#include "qqldb/qlang/compile.hpp"
#include "qqldb/qlang/parser.hpp"

namespace qqldb {

namespace {

constexpr std::string_view kHeader = "QQLDB 1";

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::string pad_left(const std::string& s, std::size_t w) {
    return s.size() >= w ? s : std::string(w - s.size(), ' ') + s;
}
std::string pad_right(const std::string& s, std::size_t w) {
    return s.size() >= w ? s : s + std::string(w - s.size(), ' ');
}

// Rows of cells; column i is right-aligned when right[i].
std::string render_table(const std::vector<std::vector<std::string>>& rows, const std::vector<bool>& right) {
    std::vector<std::size_t> widths(right.size(), 0);
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], row[i].size());
    }
    std::string out;
    for (const auto& row : rows) {
        std::string line;
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) line += "  ";
            line += right[i] ? pad_left(row[i], widths[i]) : pad_right(row[i], widths[i]);
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out += line + "\n";
    }
    return out;
}

std::string table_summary(const Database& db) {
    std::string s = fmt::format("table {}: {} data + {} temp qubits", db.schema().name(), db.data_qubits(),
                                db.temp_count());
    if (const auto& key = db.safe_key()) {
        s += fmt::format("; safe key q{} (M={}{})", key->qubit, key->match_count, key->restored ? ", restored" : "");
    }
    for (const SelectFlag& f : db.flags()) s += fmt::format("; flag {}=q{}", f.name, f.qubit);
    for (Qubit q : db.dirty_temps()) s += fmt::format("; entangled q{}", q);
    return s + "\n";
}

[[noreturn]] void malformed(std::size_t line, const std::string& what) {
    throw Error(ErrorKind::Format, fmt::format("session file line {}: {}", line, what));
}

double parse_double(std::string_view s, std::size_t line) {
    const std::string tmp(s);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(tmp.c_str(), &end);
    if (tmp.empty() || end != tmp.c_str() + tmp.size() || errno == ERANGE) {
        malformed(line, fmt::format("bad number '{}'", s));
    }
    return v;
}

std::uint64_t parse_u64(std::string_view s, std::size_t line) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) malformed(line, fmt::format("bad integer '{}'", s));
    return v;
}

std::vector<std::string_view> split_words(std::string_view s, std::size_t max_parts) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && s[i] == ' ') ++i;
        if (i >= s.size()) break;
        if (out.size() + 1 == max_parts) {
            out.push_back(s.substr(i));
            break;
        }
        const std::size_t j = std::min(s.find(' ', i), s.size());
        out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

BoolExpr parse_expr_line(std::string_view text, std::size_t line) {
    try {
        return qlang::parse_expression(text);
    } catch (const Error& e) {
        malformed(line, fmt::format("bad predicate: {}", e.what()));
    }
}

}  // namespace

Session::Session(SessionConfig config) : config_(config) {}

Database& Session::database() {
    if (!db_) throw Error(ErrorKind::Schema, "no table is open; CREATE TABLE or LOAD first");
    return *db_;
}

const Database& Session::database() const {
    if (!db_) throw Error(ErrorKind::Schema, "no table is open; CREATE TABLE or LOAD first");
    return *db_;
}

std::uint64_t Session::next_measure_seed() { return splitmix64(config_.seed + splitmix64(measure_count_++)); }

std::string Session::execute(const qlang::Statement& s) {
    std::string out;
    try {
        out = qlang::compile(s.command, *this)(*this);
    } catch (const Error& e) {
        throw Error(e.kind(), fmt::format("{}:{}: {}", s.pos.line, s.pos.column, e.what()));
    }
    transcript_ += out;
    return out;
}

std::string Session::execute_script(std::string_view text) {
    const auto statements = qlang::parse(text);
    std::string out;
    for (const auto& s : statements) out += execute(s);
    return out;
}

void Session::save(const std::filesystem::path& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::Io, fmt::format("cannot write {}", path.string()));
    f << session_to_text(*this);
    if (!f) throw Error(ErrorKind::Io, fmt::format("failed writing {}", path.string()));
}

void Session::load(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::Io, fmt::format("cannot read {}", path.string()));
    std::ostringstream buf;
    buf << f.rdbuf();
    session_from_text(*this, buf.str());
}

std::string session_to_text(const Session& s) {
    std::string out = std::string(kHeader) + "\n";
    if (!s.has_table()) return out + "SCHEMA none\n";
    const Database& db = s.database();
    out += "SCHEMA " + db.schema().name();
    for (const Field& f : db.schema().fields()) out += fmt::format(" {}:{}", f.name, f.width);
    out += fmt::format("\nTEMP {}\n", db.temp_count());
    if (const auto& key = db.safe_key()) {
        out += fmt::format("SAFE {} {} {} {}\n", key->qubit, key->match_count, key->restored ? "restored" : "held",
                           to_string(key->predicate));
    } else {
        out += "SAFE none\n";
    }
    for (const SelectFlag& f : db.flags()) out += fmt::format("FLAG {} {} {}\n", f.name, f.qubit, to_string(f.predicate));
    for (Qubit q : db.dirty_temps()) out += fmt::format("DIRTY {}\n", q);
    for (const std::string& entry : db.log()) out += "LOG " + entry + "\n";
    const auto amps = db.state().amplitudes();
    for (BasisIndex i = 0; i < amps.size(); ++i) {
        if (amps[i] != Amplitude{}) out += fmt::format("{} {:a} {:a}\n", i, amps[i].real(), amps[i].imag());
    }
    return out;
}

void session_from_text(Session& s, std::string_view text) {
    std::vector<std::string_view> lines;
    for (std::size_t i = 0; i < text.size();) {
        std::size_t j = text.find('\n', i);
        if (j == std::string_view::npos) j = text.size();
        std::string_view l = text.substr(i, j - i);
        if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
        lines.push_back(l);
        i = j + 1;
    }
    if (lines.empty() || lines[0] != kHeader) {
        throw Error(ErrorKind::Version, fmt::format("not a session file for this version (expected header '{}')", kHeader));
    }

    std::optional<TableSchema> schema;
    bool schema_seen = false;
    std::optional<unsigned> temps;
    bool safe_seen = false;
    std::optional<SafeKey> safe;
    std::vector<SelectFlag> flags;
    std::vector<Qubit> dirty;
    std::vector<std::string> log;
    std::vector<std::pair<BasisIndex, Amplitude>> entries;

    for (std::size_t k = 1; k < lines.size(); ++k) {
        const std::size_t ln = k + 1;
        const std::string_view line = lines[k];
        if (line.empty()) continue;
        if (line.rfind("LOG ", 0) == 0) {
            log.emplace_back(line.substr(4));
            continue;
        }
        const auto w = split_words(line, 0);
        const std::string_view tag = w[0];
        if (tag == "SCHEMA") {
            if (schema_seen || w.size() < 2) malformed(ln, "bad or repeated SCHEMA line");
            schema_seen = true;
            if (w.size() == 2 && w[1] == "none") continue;
            std::vector<Field> fields;
            for (std::size_t i = 2; i < w.size(); ++i) {
                const auto colon = w[i].find(':');
                if (colon == std::string_view::npos) malformed(ln, fmt::format("bad field '{}'", w[i]));
                const std::uint64_t width = parse_u64(w[i].substr(colon + 1), ln);
                if (width > 62) malformed(ln, "field too wide");
                fields.push_back(Field{std::string(w[i].substr(0, colon)), static_cast<unsigned>(width)});
            }
            try {
                schema.emplace(std::string(w[1]), std::move(fields));
            } catch (const Error& e) {
                malformed(ln, e.what());
            }
        } else if (tag == "TEMP") {
            if (temps || w.size() != 2) malformed(ln, "bad or repeated TEMP line");
            const std::uint64_t t = parse_u64(w[1], ln);
            if (t < 1 || t > 64) malformed(ln, "temp count out of range");
            temps = static_cast<unsigned>(t);
        } else if (tag == "SAFE") {
            if (safe_seen || w.size() < 2) malformed(ln, "bad or repeated SAFE line");
            safe_seen = true;
            if (w.size() == 2 && w[1] == "none") continue;
            const auto parts = split_words(line, 5);
            if (parts.size() != 5 || (parts[3] != "held" && parts[3] != "restored")) {
                malformed(ln, "SAFE needs a qubit, a match count, held or restored, and a predicate");
            }
            safe = SafeKey{static_cast<Qubit>(parse_u64(parts[1], ln)), parse_expr_line(parts[4], ln),
                           parse_u64(parts[2], ln), parts[3] == "restored"};
        } else if (tag == "FLAG") {
            const auto parts = split_words(line, 4);
            if (parts.size() != 4) malformed(ln, "FLAG needs a name, a qubit and a predicate");
            flags.push_back(SelectFlag{std::string(parts[1]), static_cast<Qubit>(parse_u64(parts[2], ln)),
                                       parse_expr_line(parts[3], ln)});
        } else if (tag == "DIRTY") {
            if (w.size() != 2) malformed(ln, "bad DIRTY line");
            dirty.push_back(static_cast<Qubit>(parse_u64(w[1], ln)));
        } else if (!tag.empty() && tag[0] >= '0' && tag[0] <= '9') {
            if (w.size() != 3) malformed(ln, "amplitude lines are '<index> <re> <im>'");
            entries.emplace_back(parse_u64(w[0], ln), Amplitude{parse_double(w[1], ln), parse_double(w[2], ln)});
        } else {
            malformed(ln, fmt::format("unknown line '{}'", line));
        }
    }

    if (!schema_seen) malformed(lines.size(), "missing SCHEMA line");
    if (!schema) {
        if (temps || safe || !flags.empty() || !dirty.empty() || !log.empty() || !entries.empty()) {
            malformed(lines.size(), "table data without a schema");
        }
        s.close();
        return;
    }
    if (!temps) malformed(lines.size(), "missing TEMP line");
    if (!safe_seen) malformed(lines.size(), "missing SAFE line");

    const unsigned m = schema->num_bits() + *temps;
    if (m > s.config().max_qubits) {
        throw Error(ErrorKind::Capacity,
                    fmt::format("session needs {} qubits; the limit is {}", m, s.config().max_qubits));
    }
    std::vector<Amplitude> amps(std::size_t{1} << m);
    std::set<BasisIndex> seen;
    for (const auto& [index, a] : entries) {
        if (index >= amps.size() || !seen.insert(index).second) {
            malformed(lines.size(), fmt::format("amplitude index {} is out of range or repeated", index));
        }
        amps[index] = a;
    }
    try {
        StateVector state = StateVector::from_amplitudes(std::move(amps), s.config().max_qubits);
        DatabaseSnapshot snap{*schema, *temps, std::move(state), std::move(flags), std::move(dirty), safe,
                              std::move(log)};
        s.open(Database(std::move(snap), s.database_config()));
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Capacity) throw;
        malformed(lines.size(), e.what());
    }
}

std::string format_amplitude(Amplitude a, bool full) {
    const double re = a.real() + 0.0;
    const double im = a.imag() + 0.0;
    if (full) {
        if (im == 0.0) return fmt::format("{:.17g}", re);
        return fmt::format("{:.17g}{:+.17g}i", re, im);
    }
    if (im == 0.0) return fmt::format("{:.6g}", re);
    return fmt::format("{:.6g}{:+.6g}i", re, im);
}

std::string format_state(const Database& db, bool full) {
    std::vector<std::vector<std::string>> rows{{"record", "fields", "temps", "amplitude", "probability"}};
    double total = 0.0;
    const auto& schema = db.schema();
    for (const StateRow& r : db.show_state()) {
        total += r.probability;
        rows.push_back({schema.ket(r.data), schema.describe(r.record), ket_string(r.temps, db.temp_count()),
                        format_amplitude(r.amplitude, full),
                        full ? fmt::format("{:.17g}", r.probability) : fmt::format("{:.6f}", r.probability)});
    }
    return table_summary(db) + render_table(rows, {false, false, false, true, true}) +
           fmt::format("{} rows, total probability {:.6f}\n", rows.size() - 1, total);
}

std::string format_histogram(const Database& db, const std::map<Record, std::uint64_t>& counts) {
    std::vector<std::vector<std::string>> rows{{"record", "fields", "count"}};
    std::uint64_t shots = 0;
    for (const auto& [rec, n] : counts) {
        shots += n;
        rows.push_back({db.schema().ket(db.schema().encode(rec)), db.schema().describe(rec), std::to_string(n)});
    }
    return render_table(rows, {false, false, true}) + fmt::format("{} shots\n", shots);
}

}  // namespace qqldb
