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
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qqldb/boolexpr.hpp"
#include "qqldb/gates.hpp"
#include "qqldb/schema.hpp"
#include "qqldb/statevec.hpp"

namespace qqldb {

inline constexpr unsigned kDefaultTempQubits = 3;
/// Amplitudes at or below this magnitude do not count as stored records.
inline constexpr double kSupportTolerance = 1e-10;
/// show_state hides rows below this amplitude magnitude.
inline constexpr double kDisplayTolerance = 1e-12;

struct DatabaseConfig {
    unsigned max_qubits = kDefaultMaxQubits;
    double epsilon = kDefaultEpsilon;  // post-selection floor
};

/// A SELECT result: temp qubit entangled with the predicate's value.
struct SelectFlag {
    std::string name;
    Qubit qubit;
    BoolExpr predicate;
};

/// The active backup: records matching `predicate` sit in the |1> half of
/// `qubit`. `match_count` is M, the number of live records that matched.
struct SafeKey {
    Qubit qubit;
    BoolExpr predicate;
    std::uint64_t match_count = 0;
    bool restored = false;  // copy already swapped back into the live rows
};

/// Everything needed to rebuild a database exactly; used for persistence.
struct DatabaseSnapshot {
    TableSchema schema;
    unsigned temp_count;
    StateVector state;
    std::vector<SelectFlag> flags;
    std::vector<Qubit> dirty;  // temps left entangled by an APPLY
    std::optional<SafeKey> safe_key;
    std::vector<std::string> log;
};

/// Single-qubit (or small) gate on data qubits, run inside apply_where.
struct GateAction {
    GateMatrix gate;
    std::vector<Qubit> targets;
};

/// Exchange two records, run inside apply_where.
struct SwapAction {
    BasisIndex first;
    BasisIndex second;
};

using WhereAction = std::variant<GateAction, SwapAction>;

enum class FlagRelease { Release, Keep };

/// One sequential-insertion step S_k on n data qubits: H on `target`,
/// controlled by the lower bits of k (1 bits positive, 0 bits negative).
struct SequentialStep {
    Qubit target;
    std::vector<Qubit> pos_controls;
    std::vector<Qubit> neg_controls;
};

SequentialStep sequential_step(BasisIndex k, unsigned n);
/// Dense S_k over n qubits (n <= 10).
GateMatrix sequential_step_gate(BasisIndex k, unsigned n);

struct StateRow {
    BasisIndex data;
    Record record;
    BasisIndex temps;
    Amplitude amplitude;
    double probability;
};

/// A superposed table: n data qubits (records) followed by t temp qubits.
///
/// Register layout is |data>|temps>; basis index = (record << t) | temps.
/// Temp qubit n + i is temp slot i. The safe key, select flags, DELETE
/// markers and APPLY combiners all live in temp slots.
class Database {
public:
    /// Fresh |0...0>; the all-zeros record counts as present.
    Database(TableSchema schema, unsigned temp_count = kDefaultTempQubits, DatabaseConfig config = {});
    /// Rebuilds from a snapshot, checking it is self-consistent.
    Database(DatabaseSnapshot snapshot, DatabaseConfig config);

    const TableSchema& schema() const { return schema_; }
    unsigned data_qubits() const { return schema_.num_bits(); }
    unsigned temp_count() const { return temp_count_; }
    const StateVector& state() const { return state_; }
    const DatabaseConfig& config() const { return config_; }
    const std::vector<SelectFlag>& flags() const { return flags_; }
    const std::vector<Qubit>& dirty_temps() const { return dirty_; }
    const std::optional<SafeKey>& safe_key() const { return safe_key_; }
    /// k when the live records are exactly {0..k}; the fresh table gives 0.
    std::optional<BasisIndex> fill_level() const;
    const std::vector<std::string>& log() const { return log_; }
    DatabaseSnapshot snapshot() const;

    /// H on the r least significant data qubits: a fresh table then holds
    /// records 0 .. 2^r - 1 uniformly.
    void insert_bulk(unsigned r);

    /// Grows a sequentially filled table {0..k'} to {0..upto_k} one record at
    /// a time. Step k is a controlled-H on bit floor(log2 k) whose controls
    /// match the lower bits of k (1 bits positive, 0 bits negative).
    void insert_sequential(BasisIndex upto_k);

    /// Inserts exactly `records`: sequential insertion of as many slots, then
    /// one swap permutation onto the requested values.
    void insert_values(std::span<const Record> records);
    void insert_indices(std::span<const BasisIndex> indices);

    /// Relabels records by disjoint swaps; amplitudes move unchanged. With a
    /// backup active the swap only acts where the safe key is |0>.
    void update(std::span<const std::pair<Record, Record>> pairs);
    void update_indices(std::span<const std::pair<BasisIndex, BasisIndex>> pairs);

    /// Marks records satisfying `e` on a fresh temp qubit and returns it.
    /// Re-selecting an existing name uncomputes the previous flag first.
    Qubit select(const std::string& name, const BoolExpr& e);

    /// Re-applies the flag's oracle. Returns true if the temp came back to |0>
    /// and was freed; false if it stays entangled (kept as a dirty temp).
    bool release_flag(const std::string& name);

    /// Runs `action` on the records whose flags satisfy `combiner` (an
    /// expression over flag names). The combiner is computed onto one extra
    /// temp qubit and uncomputed afterwards.
    void apply_where(const BoolExpr& combiner, const WhereAction& action, FlagRelease release = FlagRelease::Release);

    /// Removes the records satisfying `e` by marking and post-selecting the
    /// marker on |0>. Returns the success probability. With amplify_iters > 0
    /// the kept rows are first boosted by partial-diffusion search rounds.
    double delete_where(const BoolExpr& e, unsigned amplify_iters = 0);

    /// Oracle onto a fresh safe-key qubit followed by D_p(pi) over the data
    /// plus that qubit.
    void backup(const BoolExpr& e);

    /// Re-applies the backup oracle to the safe key, once. With `purge` the
    /// stale safe contents are then dropped and the key is freed; a purge
    /// after a plain restore only drops them.
    void restore(bool purge);

    /// Samples full basis states and keeps the data part.
    std::map<Record, std::uint64_t> measure_records(std::uint64_t shots, std::uint64_t seed) const;

    std::vector<StateRow> show_state() const;

    /// Records with non-negligible amplitude outside the backup (safe key |0>
    /// when a backup is active; any temp configuration otherwise).
    std::set<BasisIndex> live_support() const;
    /// Records held in the |1> half of the safe key.
    std::set<BasisIndex> safe_support() const;

    /// Temp qubits not held by a flag, the safe key or as dirty garbage.
    std::vector<Qubit> free_temps() const;

    /// Free temps are |0> and the norm is 1. Throws ErrorKind::State.
    void check_invariants() const;

private:
    Qubit allocate_temp(const char* purpose) const;
    std::vector<Qubit> safe_controls() const;
    BasisIndex record_index(const Record& r) const;
    void check_index(BasisIndex index) const;
    std::vector<SelectFlag>::iterator find_flag(const std::string& name);
    void swap_records(std::span<const std::pair<BasisIndex, BasisIndex>> pairs, BasisIndex temp_mask,
                      BasisIndex temp_value);
    BasisIndex safe_temp_mask() const;
    bool clear_if_zero(Qubit q);

    TableSchema schema_;
    unsigned temp_count_;
    DatabaseConfig config_;
    StateVector state_;
    std::vector<SelectFlag> flags_;
    std::vector<Qubit> dirty_;
    std::optional<SafeKey> safe_key_;
    std::vector<std::string> log_;
};

}  // namespace qqldb
