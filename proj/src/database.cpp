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

#include "qqldb/database.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fmt/format.h>
#include <numbers>

#include "qqldb/boolcirc.hpp"
#include "qqldb/diffusion.hpp"
#include "qqldb/error.hpp"

namespace qqldb {

namespace {

void collect_fields(const BoolExpr& e, std::vector<std::string>& out) {
    switch (e.kind()) {
        case BoolExpr::Kind::Comparison:
            if (std::find(out.begin(), out.end(), e.field()) == out.end()) out.push_back(e.field());
            return;
        case BoolExpr::Kind::And:
        case BoolExpr::Kind::Or:
            collect_fields(e.lhs(), out);
            collect_fields(e.rhs(), out);
            return;
        case BoolExpr::Kind::Not:
            collect_fields(e.operand(), out);
            return;
        case BoolExpr::Kind::Const:
            return;
    }
}

std::vector<std::pair<BasisIndex, BasisIndex>> pair_up(const std::set<BasisIndex>& from,
                                                       const std::set<BasisIndex>& to) {
    std::vector<BasisIndex> a;
    std::vector<BasisIndex> b;
    std::set_difference(from.begin(), from.end(), to.begin(), to.end(), std::back_inserter(a));
    std::set_difference(to.begin(), to.end(), from.begin(), from.end(), std::back_inserter(b));
    std::vector<std::pair<BasisIndex, BasisIndex>> pairs;
    for (std::size_t i = 0; i < a.size(); ++i) pairs.emplace_back(a[i], b[i]);
    return pairs;
}

}  // namespace

SequentialStep sequential_step(BasisIndex k, unsigned n) {
    if (k < 1 || n >= 64 || k >= (BasisIndex{1} << n)) {
        throw Error(ErrorKind::Argument, fmt::format("no insertion step S_{} on {} qubits", k, n));
    }
    const unsigned p = static_cast<unsigned>(std::bit_width(k)) - 1;
    SequentialStep step{n - 1 - p, {}, {}};
    for (unsigned b = 0; b < p; ++b) ((k >> b) & 1 ? step.pos_controls : step.neg_controls).push_back(n - 1 - b);
    return step;
}

GateMatrix sequential_step_gate(BasisIndex k, unsigned n) {
    const SequentialStep step = sequential_step(k, n);
    const Qubit target[] = {step.target};
    return controlled_embed(hadamard_gate(), step.pos_controls, step.neg_controls, target, n);
}

Database::Database(TableSchema schema, unsigned temp_count, DatabaseConfig config)
    : schema_(std::move(schema)),
      temp_count_(temp_count),
      config_(config),
      state_(1) {
    if (temp_count_ < 1) throw Error(ErrorKind::Argument, "a table needs at least one temp qubit");
    const unsigned total = data_qubits() + temp_count_;
    if (total > config_.max_qubits) {
        throw Error(ErrorKind::Capacity, fmt::format("table needs {} data + {} temp = {} qubits; the limit is {}",
                                                     data_qubits(), temp_count_, total, config_.max_qubits));
    }
    state_ = StateVector(total, config_.max_qubits);
    log_.push_back(fmt::format("CREATE {} n={} t={}", schema_.name(), data_qubits(), temp_count_));
}

Database::Database(DatabaseSnapshot snap, DatabaseConfig config)
    : schema_(std::move(snap.schema)),
      temp_count_(snap.temp_count),
      config_(config),
      state_(std::move(snap.state)),
      flags_(std::move(snap.flags)),
      dirty_(std::move(snap.dirty)),
      safe_key_(std::move(snap.safe_key)),
      log_(std::move(snap.log)) {
    const unsigned n = data_qubits();
    if (temp_count_ < 1) throw Error(ErrorKind::State, "snapshot has no temp qubits");
    if (state_.num_qubits() != n + temp_count_) {
        throw Error(ErrorKind::State, fmt::format("snapshot state has {} qubits, schema and temps need {}",
                                                  state_.num_qubits(), n + temp_count_));
    }
    if (state_.num_qubits() > config_.max_qubits) {
        throw Error(ErrorKind::Capacity, fmt::format("snapshot needs {} qubits; the limit is {}",
                                                     state_.num_qubits(), config_.max_qubits));
    }
    std::set<Qubit> held;
    auto hold = [&](Qubit q) {
        if (q < n || q >= n + temp_count_ || !held.insert(q).second) {
            throw Error(ErrorKind::State, fmt::format("snapshot temp qubit {} is invalid or used twice", q));
        }
    };
    std::set<std::string> names;
    for (const SelectFlag& f : flags_) {
        hold(f.qubit);
        validate(f.predicate, schema_);
        if (!names.insert(f.name).second) throw Error(ErrorKind::State, fmt::format("duplicate flag '{}'", f.name));
    }
    for (Qubit q : dirty_) hold(q);
    if (safe_key_) {
        hold(safe_key_->qubit);
        validate(safe_key_->predicate, schema_);
    }
    state_.check_norm();
}

DatabaseSnapshot Database::snapshot() const {
    return DatabaseSnapshot{schema_, temp_count_, state_, flags_, dirty_, safe_key_, log_};
}

void Database::check_index(BasisIndex index) const {
    if (index >= schema_.num_records()) {
        throw Error(ErrorKind::Argument,
                    fmt::format("record index {} does not fit in {} data qubits", index, data_qubits()));
    }
}

BasisIndex Database::record_index(const Record& r) const { return schema_.encode(r); }

BasisIndex Database::safe_temp_mask() const {
    return safe_key_ ? state_.mask(safe_key_->qubit) : 0;
}

std::vector<Qubit> Database::safe_controls() const {
    if (safe_key_) return {safe_key_->qubit};
    return {};
}

std::vector<Qubit> Database::free_temps() const {
    std::vector<Qubit> out;
    const unsigned n = data_qubits();
    for (Qubit q = n; q < n + temp_count_; ++q) {
        const bool flagged = std::any_of(flags_.begin(), flags_.end(), [q](const SelectFlag& f) { return f.qubit == q; });
        const bool dirty = std::find(dirty_.begin(), dirty_.end(), q) != dirty_.end();
        const bool safe = safe_key_ && safe_key_->qubit == q;
        if (!flagged && !dirty && !safe) out.push_back(q);
    }
    return out;
}

Qubit Database::allocate_temp(const char* purpose) const {
    const auto free = free_temps();
    if (free.empty()) {
        throw Error(ErrorKind::Capacity,
                    fmt::format("no free temp qubit for {} (all {} in use)", purpose, temp_count_));
    }
    return free.front();
}

std::vector<SelectFlag>::iterator Database::find_flag(const std::string& name) {
    return std::find_if(flags_.begin(), flags_.end(), [&](const SelectFlag& f) { return f.name == name; });
}

bool Database::clear_if_zero(Qubit q) {
    if (state_.probability_of(q, 1) >= config_.epsilon) return false;
    auto amps = state_.mutable_amplitudes();
    const BasisIndex m = state_.mask(q);
    for (BasisIndex i = 0; i < amps.size(); ++i) {
        if (i & m) amps[i] = 0.0;
    }
    const double norm = std::sqrt(state_.norm_squared());
    for (auto& a : amps) a /= norm;
    return true;
}

void Database::swap_records(std::span<const std::pair<BasisIndex, BasisIndex>> pairs, BasisIndex temp_mask,
                            BasisIndex temp_value) {
    auto amps = state_.mutable_amplitudes();
    for (const auto& [a, b] : pairs) {
        for_each_index(temp_count_, temp_mask, temp_value, [&](BasisIndex temps) {
            std::swap(amps[(a << temp_count_) | temps], amps[(b << temp_count_) | temps]);
        });
    }
}

std::optional<BasisIndex> Database::fill_level() const {
    const auto live = live_support();
    if (live.empty() || *live.begin() != 0) return std::nullopt;
    const BasisIndex top = *live.rbegin();
    if (live.size() != top + 1) return std::nullopt;
    return top;
}

void Database::insert_bulk(unsigned r) {
    const unsigned n = data_qubits();
    if (r > n) throw Error(ErrorKind::Argument, fmt::format("INSERT ALL {} exceeds the {} data qubits", r, n));
    const auto neg = safe_controls();
    const GateMatrix h = hadamard_gate();
    for (Qubit q = n - r; q < n; ++q) {
        const Qubit target[] = {q};
        state_.apply_controlled(h, {}, neg, target);
    }
    log_.push_back(fmt::format("INSERT ALL {}", r));
}

void Database::insert_sequential(BasisIndex upto_k) {
    const unsigned n = data_qubits();
    if (upto_k < 1 || upto_k >= schema_.num_records()) {
        throw Error(ErrorKind::Argument, fmt::format("INSERT SEQ {} is outside 1..{}", upto_k, schema_.num_records() - 1));
    }
    const auto fill = fill_level();
    if (!fill) throw Error(ErrorKind::State, "INSERT SEQ needs a table filled sequentially from record 0");
    if (*fill >= upto_k) {
        throw Error(ErrorKind::State, fmt::format("table already holds records 0..{}; INSERT SEQ {} adds nothing",
                                                  *fill, upto_k));
    }
    const GateMatrix h = hadamard_gate();
    const auto safe = safe_controls();
    for (BasisIndex k = *fill + 1; k <= upto_k; ++k) {
        SequentialStep step = sequential_step(k, n);
        step.neg_controls.insert(step.neg_controls.end(), safe.begin(), safe.end());
        const Qubit target[] = {step.target};
        state_.apply_controlled(h, step.pos_controls, step.neg_controls, target);
    }
    log_.push_back(fmt::format("INSERT SEQ {}", upto_k));
}

void Database::insert_values(std::span<const Record> records) {
    std::vector<BasisIndex> indices;
    indices.reserve(records.size());
    for (const Record& r : records) indices.push_back(record_index(r));
    insert_indices(indices);
}

void Database::insert_indices(std::span<const BasisIndex> indices) {
    if (indices.empty()) throw Error(ErrorKind::Argument, "INSERT VALUES needs at least one record");
    if (indices.size() > schema_.num_records()) {
        throw Error(ErrorKind::Capacity, fmt::format("{} records do not fit in a {}-record table", indices.size(),
                                                     schema_.num_records()));
    }
    std::set<BasisIndex> wanted;
    for (BasisIndex i : indices) {
        check_index(i);
        if (!wanted.insert(i).second) {
            throw Error(ErrorKind::Argument, fmt::format("duplicate record {} in INSERT VALUES", schema_.ket(i)));
        }
    }
    const auto fill = fill_level();
    if (!fill) throw Error(ErrorKind::State, "INSERT VALUES needs a fresh or sequentially filled table");
    const BasisIndex count = wanted.size();
    const BasisIndex capacity = schema_.num_records();

    // On a fresh table |0...0> is a free slot; otherwise existing rows stay.
    const BasisIndex first = *fill == 0 ? 0 : *fill + 1;
    if (count > capacity - first) {
        throw Error(ErrorKind::Capacity, fmt::format("{} new records do not fit: {} of {} slots are free", count,
                                                     capacity - first, capacity));
    }
    if (first > 0 && *wanted.begin() <= *fill) {
        throw Error(ErrorKind::Argument,
                    fmt::format("record {} is already stored", schema_.ket(*wanted.begin())));
    }
    const BasisIndex last = first + count - 1;
    const auto saved = state_;
    const auto saved_log = log_.size();
    try {
        if (last > *fill) insert_sequential(last);
        std::set<BasisIndex> slots;
        for (BasisIndex i = first; i <= last; ++i) slots.insert(i);
        const auto pairs = pair_up(slots, wanted);
        swap_records(pairs, safe_temp_mask(), 0);
    } catch (...) {
        state_ = saved;
        log_.resize(saved_log);
        throw;
    }
    log_.resize(saved_log);
    std::string list;
    for (BasisIndex i : wanted) list += (list.empty() ? "" : ",") + schema_.ket(i);
    log_.push_back(fmt::format("INSERT VALUES {}", list));
}

void Database::update(std::span<const std::pair<Record, Record>> pairs) {
    std::vector<std::pair<BasisIndex, BasisIndex>> idx;
    for (const auto& [from, to] : pairs) idx.emplace_back(record_index(from), record_index(to));
    update_indices(idx);
}

void Database::update_indices(std::span<const std::pair<BasisIndex, BasisIndex>> pairs) {
    std::set<BasisIndex> touched;
    for (const auto& [from, to] : pairs) {
        check_index(from);
        check_index(to);
        if (from == to || !touched.insert(from).second || !touched.insert(to).second) {
            throw Error(ErrorKind::Argument, "UPDATE pairs must be disjoint swaps between distinct records");
        }
    }
    if (!safe_key_) {
        const auto live = live_support();
        for (const auto& [from, to] : pairs) {
            if (live.count(from) && live.count(to)) {
                throw Error(ErrorKind::Argument,
                            fmt::format("UPDATE to {} would duplicate an existing record", schema_.ket(to)));
            }
        }
    }
    swap_records(pairs, safe_temp_mask(), 0);
    std::string list;
    for (const auto& [from, to] : pairs) {
        list += fmt::format("{}{} TO {}", list.empty() ? "" : ", ", schema_.ket(from), schema_.ket(to));
    }
    log_.push_back("UPDATE SET " + list);
}

Qubit Database::select(const std::string& name, const BoolExpr& e) {
    validate(e, schema_);
    if (find_flag(name) != flags_.end()) release_flag(name);
    const Qubit q = allocate_temp("SELECT");
    Oracle(e, schema_, q).apply(state_);
    flags_.push_back(SelectFlag{name, q, e});
    log_.push_back(fmt::format("SELECT {} WHERE {} -> q{}", name, to_string(e), q));
    return q;
}

bool Database::release_flag(const std::string& name) {
    const auto it = find_flag(name);
    if (it == flags_.end()) throw Error(ErrorKind::State, fmt::format("no select flag named '{}'", name));
    const SelectFlag flag = *it;
    flags_.erase(it);
    Oracle(flag.predicate, schema_, flag.qubit).apply(state_);
    if (clear_if_zero(flag.qubit)) return true;
    dirty_.push_back(flag.qubit);
    log_.push_back(fmt::format("flag {} on q{} stays entangled", flag.name, flag.qubit));
    return false;
}

void Database::apply_where(const BoolExpr& combiner, const WhereAction& action, FlagRelease release) {
    std::vector<std::string> names;
    collect_fields(combiner, names);
    std::vector<Field> fields;
    std::vector<Qubit> bit_qubits;
    for (const auto& name : names) {
        const auto it = find_flag(name);
        if (it == flags_.end()) throw Error(ErrorKind::State, fmt::format("no select flag named '{}'", name));
        fields.push_back(Field{name, 1});
        bit_qubits.push_back(it->qubit);
    }
    std::optional<TableSchema> flag_schema;
    if (!fields.empty()) {
        flag_schema.emplace("flags", fields);
        validate(combiner, *flag_schema);
    } else {
        flag_schema.emplace("flags", std::vector<Field>{Field{"_", 1}});
        bit_qubits.push_back(data_qubits());
    }

    const unsigned n = data_qubits();
    if (const auto* g = std::get_if<GateAction>(&action)) {
        std::set<Qubit> seen;
        for (Qubit q : g->targets) {
            if (q >= n || !seen.insert(q).second) {
                throw Error(ErrorKind::Argument, fmt::format("APPLY target qubit {} is not a distinct data qubit", q));
            }
        }
        if (g->gate.num_qubits() != g->targets.size()) {
            throw Error(ErrorKind::Argument, "APPLY gate size does not match its target list");
        }
    } else {
        const auto& s = std::get<SwapAction>(action);
        check_index(s.first);
        check_index(s.second);
        if (s.first == s.second) throw Error(ErrorKind::Argument, "APPLY SWAP needs two distinct records");
    }

    const Qubit c = allocate_temp("the APPLY combiner");
    const Oracle comb(combiner, *flag_schema, bit_qubits, c);
    comb.apply(state_);
    const auto neg = safe_controls();
    if (const auto* g = std::get_if<GateAction>(&action)) {
        const Qubit pos[] = {c};
        state_.apply_controlled(g->gate, pos, neg, g->targets);
    } else {
        const auto& s = std::get<SwapAction>(action);
        const std::pair<BasisIndex, BasisIndex> pair[] = {{s.first, s.second}};
        const BasisIndex cm = state_.mask(c);
        swap_records(pair, cm | safe_temp_mask(), cm);
    }
    comb.apply(state_);
    if (!clear_if_zero(c)) throw Error(ErrorKind::State, "APPLY combiner qubit failed to uncompute");

    log_.push_back(fmt::format("APPLY WHEN {}", to_string(combiner)));
    if (release == FlagRelease::Release) {
        for (const auto& name : names) release_flag(name);
    }
}

double Database::delete_where(const BoolExpr& e, unsigned amplify_iters) {
    validate(e, schema_);
    const Qubit q = allocate_temp("DELETE");
    const auto neg = safe_controls();
    const Oracle mark(e, schema_, q);
    const StateVector saved = state_;
    double p = 1.0;
    try {
        if (amplify_iters == 0) {
            mark.apply(state_, neg);
            p = state_.postselect(q, 0, config_.epsilon);
        } else {
            const Oracle keep(BoolExpr::negate(e), schema_, q);
            const DiffusionParams dp{data_qubits(), std::numbers::pi};
            keep.apply(state_, neg);
            for (unsigned i = 0; i < amplify_iters; ++i) {
                apply_partial_diffusion(state_, dp, q, neg);
                keep.apply(state_, neg);
            }
            state_.apply_mcx({}, neg, q);
            p = state_.postselect(q, 0, config_.epsilon);
            mark.apply(state_, neg);
            p *= state_.postselect(q, 0, config_.epsilon);
        }
    } catch (...) {
        state_ = saved;
        throw;
    }
    log_.push_back(amplify_iters == 0 ? fmt::format("DELETE WHERE {} (p={:.6f})", to_string(e), p)
                                      : fmt::format("DELETE WHERE {} AMPLIFY {} (p={:.6f})", to_string(e),
                                                    amplify_iters, p));
    return p;
}

void Database::backup(const BoolExpr& e) {
    validate(e, schema_);
    if (safe_key_) throw Error(ErrorKind::State, "a backup is already active; RESTORE PURGE it first");
    const Qubit q = allocate_temp("BACKUP");
    std::uint64_t matches = 0;
    for (BasisIndex i : live_support()) {
        if (eval_expr(e, schema_, schema_.decode(i))) ++matches;
    }
    Oracle(e, schema_, q).apply(state_);
    apply_partial_diffusion(state_, DiffusionParams{data_qubits(), std::numbers::pi}, q);
    safe_key_ = SafeKey{q, e, matches, false};
    log_.push_back(fmt::format("BACKUP WHERE {} -> q{} (M={})", to_string(e), q, matches));
}

void Database::restore(bool purge) {
    if (!safe_key_) throw Error(ErrorKind::State, "no active backup to restore");
    const SafeKey key = *safe_key_;
    if (key.restored && !purge) {
        throw Error(ErrorKind::State, "backup already restored; RESTORE PURGE discards the key");
    }
    const StateVector saved = state_;
    if (!key.restored) Oracle(key.predicate, schema_, key.qubit).apply(state_);
    if (purge) {
        try {
            state_.postselect(key.qubit, 0, config_.epsilon);
        } catch (...) {
            state_ = saved;
            throw;
        }
        safe_key_.reset();
    } else {
        safe_key_->restored = true;
    }
    log_.push_back(purge ? "RESTORE PURGE" : "RESTORE");
}

std::map<Record, std::uint64_t> Database::measure_records(std::uint64_t shots, std::uint64_t seed) const {
    std::map<Record, std::uint64_t> out;
    for (const auto& [index, count] : state_.sample(shots, seed)) {
        out[schema_.decode(index >> temp_count_)] += count;
    }
    return out;
}

std::vector<StateRow> Database::show_state() const {
    std::vector<StateRow> rows;
    const BasisIndex temp_mask = (BasisIndex{1} << temp_count_) - 1;
    const auto amps = state_.amplitudes();
    for (BasisIndex i = 0; i < amps.size(); ++i) {
        if (std::abs(amps[i]) <= kDisplayTolerance) continue;
        const BasisIndex data = i >> temp_count_;
        rows.push_back(StateRow{data, schema_.decode(data), i & temp_mask, amps[i], std::norm(amps[i])});
    }
    return rows;
}

std::set<BasisIndex> Database::live_support() const {
    std::set<BasisIndex> out;
    const BasisIndex safe = safe_temp_mask();
    const auto amps = state_.amplitudes();
    for (BasisIndex i = 0; i < amps.size(); ++i) {
        if ((i & safe) == 0 && std::abs(amps[i]) > kSupportTolerance) out.insert(i >> temp_count_);
    }
    return out;
}

std::set<BasisIndex> Database::safe_support() const {
    std::set<BasisIndex> out;
    const BasisIndex safe = safe_temp_mask();
    if (safe == 0) return out;
    const auto amps = state_.amplitudes();
    for (BasisIndex i = 0; i < amps.size(); ++i) {
        if ((i & safe) != 0 && std::abs(amps[i]) > kSupportTolerance) out.insert(i >> temp_count_);
    }
    return out;
}

void Database::check_invariants() const {
    if (std::abs(state_.norm_squared() - 1.0) > kNormTolerance) {
        throw Error(ErrorKind::State, fmt::format("state norm drifted to {}", state_.norm_squared()));
    }
    for (Qubit q : free_temps()) {
        if (state_.probability_of(q, 1) > kNormTolerance) {
            throw Error(ErrorKind::State, fmt::format("free temp qubit {} is not |0>", q));
        }
    }
}

}  // namespace qqldb
