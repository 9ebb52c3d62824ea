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

#include "reference_model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "qqldb/error.hpp"
#include "qqldb/qlang/parser.hpp"
#include "qqldb/qlang/printer.hpp"
#include "qqldb/session.hpp"
#include "support.hpp"

namespace qqldb::testing {

namespace {

constexpr double kLive = 1e-10;
constexpr double kPrune = 1e-15;
// Smallest post-selection probability the model accepts.
constexpr double kMinPostselect = 1e-6;

void names_in(const BoolExpr& e, std::vector<std::string>& out) {
    switch (e.kind()) {
        case BoolExpr::Kind::Comparison:
            if (std::find(out.begin(), out.end(), e.field()) == out.end()) out.push_back(e.field());
            break;
        case BoolExpr::Kind::And:
        case BoolExpr::Kind::Or:
            names_in(e.lhs(), out);
            names_in(e.rhs(), out);
            break;
        case BoolExpr::Kind::Not: names_in(e.operand(), out); break;
        case BoolExpr::Kind::Const: break;
    }
}

std::string describe(const std::set<BasisIndex>& s) {
    std::ostringstream out;
    out << '{';
    for (auto it = s.begin(); it != s.end(); ++it) out << (it == s.begin() ? "" : ",") << *it;
    out << '}';
    return out.str();
}

}  // namespace

ReferenceModel::ReferenceModel(TableSchema schema, unsigned temps, double epsilon)
    : core_{std::move(schema), temps, {{Key{0, 0}, 1.0}}, {}, {}, std::nullopt}, epsilon_(epsilon) {}

ReferenceModel ReferenceModel::create(const qlang::CreateTable& c, double epsilon) {
    std::vector<Field> fields;
    for (const auto& f : c.fields) fields.push_back(Field{f.name, static_cast<unsigned>(f.width)});
    return ReferenceModel(TableSchema(c.name, fields), static_cast<unsigned>(c.temps.value_or(3)), epsilon);
}

bool ReferenceModel::outside_copy(unsigned slots) const {
    return !core_.safe || ((slots >> core_.safe->slot) & 1u) == 0;
}

bool ReferenceModel::matches(const BoolExpr& e, BasisIndex record) const {
    return eval_on_index(e, core_.schema, record);
}

unsigned ReferenceModel::value_bit(const std::string& field, std::uint64_t bit) const {
    const auto& fields = core_.schema.fields();
    unsigned shift = 0;
    for (std::size_t i = fields.size(); i-- > 0;) {
        if (fields[i].name == field) {
            if (bit >= fields[i].width) throw ModelRejects("bit beyond field width");
            return shift + static_cast<unsigned>(bit);
        }
        shift += fields[i].width;
    }
    throw ModelRejects("unknown field " + field);
}

BasisIndex ReferenceModel::resolve(const qlang::RecordLit& r) const {
    const unsigned n = core_.schema.num_bits();
    if (const auto* ket = std::get_if<qlang::KetLiteral>(&r)) {
        if (ket->bits.size() != n) throw ModelRejects("ket width");
        return std::stoull(ket->bits, nullptr, 2);
    }
    const auto& assigns = std::get<std::vector<qlang::FieldAssign>>(r);
    if (assigns.size() != core_.schema.fields().size()) throw ModelRejects("tuple arity");
    BasisIndex value = 0;
    std::set<std::string> seen;
    for (const auto& a : assigns) {
        if (!seen.insert(a.field).second) throw ModelRejects("field assigned twice");
        const unsigned low = value_bit(a.field, 0);
        const unsigned width = core_.schema.fields()[core_.schema.field_index(a.field)].width;
        if (a.value >> width) throw ModelRejects("value too wide");
        value |= a.value << low;
    }
    return value;
}

std::set<BasisIndex> ReferenceModel::live() const {
    std::set<BasisIndex> out;
    for (const auto& [k, a] : core_.amps) {
        if (outside_copy(k.second) && std::abs(a) > kLive) out.insert(k.first);
    }
    return out;
}

std::set<BasisIndex> ReferenceModel::protected_records() const {
    std::set<BasisIndex> out;
    if (!core_.safe) return out;
    for (const auto& [k, a] : core_.amps) {
        if (!outside_copy(k.second) && std::abs(a) > kLive) out.insert(k.first);
    }
    return out;
}

std::optional<BasisIndex> ReferenceModel::fill() const {
    const auto l = live();
    if (l.empty() || *l.begin() != 0 || *l.rbegin() + 1 != l.size()) return std::nullopt;
    return *l.rbegin();
}

std::vector<std::string> ReferenceModel::flag_names() const {
    std::vector<std::string> out;
    for (const auto& f : core_.flags) out.push_back(f.name);
    return out;
}

unsigned ReferenceModel::free_slots() const {
    return core_.temps - static_cast<unsigned>(core_.flags.size() + core_.dirty.size() + (core_.safe ? 1 : 0));
}

double ReferenceModel::total_probability() const {
    double t = 0.0;
    for (const auto& [k, a] : core_.amps) t += std::norm(a);
    return t;
}

unsigned ReferenceModel::allocate() const {
    for (unsigned s = 0; s < core_.temps; ++s) {
        const bool used = std::any_of(core_.flags.begin(), core_.flags.end(), [s](const Flag& f) { return f.slot == s; }) ||
                          std::count(core_.dirty.begin(), core_.dirty.end(), s) > 0 ||
                          (core_.safe && core_.safe->slot == s);
        if (!used) return s;
    }
    throw ModelRejects("no free temp slot");
}

void ReferenceModel::prune() {
    std::erase_if(core_.amps, [](const auto& kv) { return std::abs(kv.second) < kPrune; });
}

template <class Cond>
void ReferenceModel::hadamard(unsigned bit, Cond cond) {
    const BasisIndex m = BasisIndex{1} << bit;
    const double r = 1.0 / std::sqrt(2.0);
    std::map<Key, Amplitude> out;
    for (const auto& [k, a] : core_.amps) {
        const auto [d, s] = k;
        if (!cond(d, s)) {
            out[k] += a;
            continue;
        }
        out[{d & ~m, s}] += r * a;
        out[{d | m, s}] += (d & m ? -r : r) * a;
    }
    core_.amps = std::move(out);
    prune();
}

template <class Map, class Cond>
void ReferenceModel::relabel(Map map, Cond cond) {
    std::map<Key, Amplitude> out;
    for (const auto& [k, a] : core_.amps) {
        out[cond(k.first, k.second) ? map(k.first, k.second) : k] += a;
    }
    core_.amps = std::move(out);
}

template <class Cond>
void ReferenceModel::mark(unsigned slot, const BoolExpr& e, bool negated, Cond cond) {
    relabel(
        [&](BasisIndex d, unsigned s) {
            return Key{d, s ^ (static_cast<unsigned>(matches(e, d) != negated) << slot)};
        },
        cond);
}

// Flag-0 rows of each spectator pattern become 2<a> - a, flag-1 rows flip sign.
template <class Cond>
void ReferenceModel::invert_about_mean(unsigned slot, Cond cond) {
    const unsigned bit = 1u << slot;
    const BasisIndex records = core_.schema.num_records();
    std::map<unsigned, Amplitude> sums;
    for (const auto& [k, a] : core_.amps) {
        if (!(k.second & bit) && cond(k.second)) sums[k.second] += a;
    }
    std::map<Key, Amplitude> out;
    for (const auto& [k, a] : core_.amps) {
        out[k] += cond(k.second & ~bit) ? -a : a;
    }
    for (const auto& [s, sum] : sums) {
        const Amplitude twice_mean = 2.0 * sum / static_cast<double>(records);
        for (BasisIndex d = 0; d < records; ++d) out[{d, s}] += twice_mean;
    }
    core_.amps = std::move(out);
    prune();
}

double ReferenceModel::keep_slot_zero(unsigned slot, double min_probability) {
    double mass = 0.0;
    for (const auto& [k, a] : core_.amps) {
        if (!((k.second >> slot) & 1u)) mass += std::norm(a);
    }
    if (mass < min_probability) throw ModelRejects("post-selection too unlikely");
    std::erase_if(core_.amps, [slot](const auto& kv) { return (kv.first.second >> slot) & 1u; });
    const double scale = 1.0 / std::sqrt(mass);
    for (auto& [k, a] : core_.amps) a *= scale;
    return mass;
}

bool ReferenceModel::release(const Flag& f) {
    mark(f.slot, f.predicate, false, [](BasisIndex, unsigned) { return true; });
    double ones = 0.0;
    for (const auto& [k, a] : core_.amps) {
        if ((k.second >> f.slot) & 1u) ones += std::norm(a);
    }
    if (ones < epsilon_) {
        keep_slot_zero(f.slot, 0.0);
        return true;
    }
    core_.dirty.push_back(f.slot);
    return false;
}

void ReferenceModel::insert_all(std::uint64_t r) {
    if (r > core_.schema.num_bits()) throw ModelRejects("INSERT ALL too wide");
    for (unsigned b = 0; b < r; ++b) {
        hadamard(b, [this](BasisIndex, unsigned s) { return outside_copy(s); });
    }
}

void ReferenceModel::insert_seq(BasisIndex upto) {
    if (upto < 1 || upto >= core_.schema.num_records()) throw ModelRejects("INSERT SEQ range");
    const auto f = fill();
    if (!f || *f >= upto) throw ModelRejects("INSERT SEQ precondition");
    // Record j arrives by splitting on bit p = floor(log2 j) among records that
    // agree with j below p.
    for (BasisIndex j = *f + 1; j <= upto; ++j) {
        const unsigned p = static_cast<unsigned>(std::bit_width(j)) - 1;
        const BasisIndex low = (BasisIndex{1} << p) - 1;
        hadamard(p, [&](BasisIndex d, unsigned s) { return outside_copy(s) && (d & low) == (j & low); });
    }
}

void ReferenceModel::insert_values(const std::vector<qlang::RecordLit>& records) {
    const BasisIndex capacity = core_.schema.num_records();
    if (records.empty()) throw ModelRejects("empty INSERT VALUES");
    if (records.size() > capacity) throw ModelRejects("too many records");
    std::set<BasisIndex> wanted;
    for (const auto& r : records) {
        if (!wanted.insert(resolve(r)).second) throw ModelRejects("duplicate record");
    }
    const auto f = fill();
    if (!f) throw ModelRejects("INSERT VALUES precondition");
    const BasisIndex first = *f == 0 ? 0 : *f + 1;
    if (wanted.size() > capacity - first) throw ModelRejects("INSERT VALUES capacity");
    if (first > 0 && *wanted.begin() <= *f) throw ModelRejects("record already stored");
    const BasisIndex last = first + wanted.size() - 1;
    if (last > *f) insert_seq(last);
    std::set<BasisIndex> slots;
    for (BasisIndex i = first; i <= last; ++i) slots.insert(i);
    std::vector<BasisIndex> out_of, into;
    std::set_difference(slots.begin(), slots.end(), wanted.begin(), wanted.end(), std::back_inserter(out_of));
    std::set_difference(wanted.begin(), wanted.end(), slots.begin(), slots.end(), std::back_inserter(into));
    std::map<BasisIndex, BasisIndex> perm;
    for (std::size_t i = 0; i < out_of.size(); ++i) {
        perm[out_of[i]] = into[i];
        perm[into[i]] = out_of[i];
    }
    relabel(
        [&](BasisIndex d, unsigned s) {
            const auto it = perm.find(d);
            return Key{it == perm.end() ? d : it->second, s};
        },
        [this](BasisIndex, unsigned s) { return outside_copy(s); });
}

void ReferenceModel::update(const std::vector<std::pair<qlang::RecordLit, qlang::RecordLit>>& pairs) {
    std::map<BasisIndex, BasisIndex> perm;
    for (const auto& [a, b] : pairs) {
        const BasisIndex from = resolve(a), to = resolve(b);
        if (from == to || perm.count(from) || perm.count(to)) throw ModelRejects("overlapping UPDATE pairs");
        perm[from] = to;
        perm[to] = from;
    }
    if (!core_.safe) {
        const auto l = live();
        for (const auto& [a, b] : pairs) {
            if (l.count(resolve(a)) && l.count(resolve(b))) throw ModelRejects("UPDATE duplicates a record");
        }
    }
    relabel(
        [&](BasisIndex d, unsigned s) {
            const auto it = perm.find(d);
            return Key{it == perm.end() ? d : it->second, s};
        },
        [this](BasisIndex, unsigned s) { return outside_copy(s); });
}

void ReferenceModel::remove(const BoolExpr& e, unsigned iters) {
    const unsigned q = allocate();
    const auto live_rows = [this](BasisIndex, unsigned s) { return outside_copy(s); };
    if (iters == 0) {
        mark(q, e, false, live_rows);
        last_p_ = keep_slot_zero(q, kMinPostselect);
        return;
    }
    mark(q, e, true, live_rows);
    for (unsigned i = 0; i < iters; ++i) {
        invert_about_mean(q, [this](unsigned s) { return outside_copy(s); });
        mark(q, e, true, live_rows);
    }
    mark(q, BoolExpr::constant(true), false, live_rows);
    const double p1 = keep_slot_zero(q, kMinPostselect);
    mark(q, e, false, live_rows);
    last_p_ = p1 * keep_slot_zero(q, kMinPostselect);
}

void ReferenceModel::select(const std::string& name, const BoolExpr& e) {
    const auto it = std::find_if(core_.flags.begin(), core_.flags.end(), [&](const Flag& f) { return f.name == name; });
    if (it != core_.flags.end()) {
        const Flag old = *it;
        core_.flags.erase(it);
        release(old);
    }
    const unsigned slot = allocate();
    mark(slot, e, false, [](BasisIndex, unsigned) { return true; });
    core_.flags.push_back(Flag{name, slot, e});
}

void ReferenceModel::apply(const qlang::GateSpec& g, const BoolExpr& when) {
    std::vector<std::string> names;
    names_in(when, names);
    std::vector<unsigned> slots;
    for (const auto& name : names) {
        const auto it = std::find_if(core_.flags.begin(), core_.flags.end(), [&](const Flag& f) { return f.name == name; });
        if (it == core_.flags.end()) throw ModelRejects("unknown flag " + name);
        slots.push_back(it->slot);
    }
    std::vector<Field> flag_fields;
    for (const auto& name : names) flag_fields.push_back(Field{name, 1});
    if (flag_fields.empty()) flag_fields.push_back(Field{"_", 1});
    const TableSchema flag_schema("flags", flag_fields);
    const auto fires = [&](BasisIndex, unsigned s) {
        if (!outside_copy(s)) return false;
        BasisIndex bits = 0;
        for (unsigned slot : slots) bits = (bits << 1) | ((s >> slot) & 1u);
        return eval_on_index(when, flag_schema, bits);
    };

    std::optional<std::pair<BasisIndex, BasisIndex>> swap;
    std::optional<std::pair<qlang::SingleGate, unsigned>> bit_gate;
    if (const auto* b = std::get_if<qlang::BitGate>(&g)) {
        bit_gate.emplace(b->gate, value_bit(b->field, b->bit));
    } else {
        const auto& r = std::get<qlang::RecordSwap>(g);
        swap.emplace(resolve(r.first), resolve(r.second));
        if (swap->first == swap->second) throw ModelRejects("SWAP of a record with itself");
    }
    allocate();

    if (bit_gate && bit_gate->first == qlang::SingleGate::H) {
        hadamard(bit_gate->second, fires);
    } else if (bit_gate) {
        const BasisIndex m = BasisIndex{1} << bit_gate->second;
        relabel([m](BasisIndex d, unsigned s) { return Key{d ^ m, s}; }, fires);
    } else {
        relabel(
            [&](BasisIndex d, unsigned s) {
                if (d == swap->first) return Key{swap->second, s};
                if (d == swap->second) return Key{swap->first, s};
                return Key{d, s};
            },
            fires);
    }
    for (const auto& name : names) {
        const auto it = std::find_if(core_.flags.begin(), core_.flags.end(), [&](const Flag& f) { return f.name == name; });
        const Flag f = *it;
        core_.flags.erase(it);
        release(f);
    }
}

void ReferenceModel::backup(const BoolExpr& e) {
    if (core_.safe) throw ModelRejects("backup already active");
    const unsigned slot = allocate();
    mark(slot, e, false, [](BasisIndex, unsigned) { return true; });
    invert_about_mean(slot, [](unsigned) { return true; });
    core_.safe = Backup{slot, e, false};
}

void ReferenceModel::restore(bool purge) {
    if (!core_.safe) throw ModelRejects("no backup");
    const Backup key = *core_.safe;
    if (key.restored && !purge) throw ModelRejects("already restored");
    if (!key.restored) mark(key.slot, key.predicate, false, [](BasisIndex, unsigned) { return true; });
    if (purge) {
        last_p_ = keep_slot_zero(key.slot, kMinPostselect);
        core_.safe.reset();
    } else {
        core_.safe->restored = true;
    }
}

void ReferenceModel::execute(const qlang::Command& c) {
    const Core saved = core_;
    try {
        std::visit(
            [&](const auto& cmd) {
                using T = std::decay_t<decltype(cmd)>;
                if constexpr (std::is_same_v<T, qlang::CreateTable>) {
                    auto fresh = create(cmd, epsilon_);
                    core_ = std::move(fresh.core_);
                } else if constexpr (std::is_same_v<T, qlang::InsertAll>) {
                    insert_all(cmd.exponent);
                } else if constexpr (std::is_same_v<T, qlang::InsertSeq>) {
                    insert_seq(cmd.upto);
                } else if constexpr (std::is_same_v<T, qlang::InsertValues>) {
                    insert_values(cmd.records);
                } else if constexpr (std::is_same_v<T, qlang::Update>) {
                    update(cmd.pairs);
                } else if constexpr (std::is_same_v<T, qlang::Delete>) {
                    remove(cmd.where, static_cast<unsigned>(cmd.amplify.value_or(0)));
                } else if constexpr (std::is_same_v<T, qlang::Select>) {
                    select(cmd.name, cmd.where);
                } else if constexpr (std::is_same_v<T, qlang::Apply>) {
                    apply(cmd.gate, cmd.when);
                } else if constexpr (std::is_same_v<T, qlang::Backup>) {
                    backup(cmd.where);
                } else if constexpr (std::is_same_v<T, qlang::Restore>) {
                    restore(cmd.purge);
                } else if constexpr (std::is_same_v<T, qlang::Save>) {
                    saved_.insert_or_assign(cmd.path, core_);
                } else if constexpr (std::is_same_v<T, qlang::Load>) {
                    const auto it = saved_.find(cmd.path);
                    if (it == saved_.end()) throw ModelRejects("nothing saved at " + cmd.path);
                    core_ = it->second;
                }
            },
            c);
    } catch (...) {
        core_ = saved;
        throw;
    }
}

namespace {

qlang::RecordLit literal(std::mt19937_64& rng, const TableSchema& schema, BasisIndex index) {
    if (rng() % 2 == 0) {
        std::string bits;
        for (unsigned b = schema.num_bits(); b-- > 0;) bits.push_back((index >> b) & 1 ? '1' : '0');
        return qlang::KetLiteral{bits};
    }
    std::vector<qlang::FieldAssign> assigns;
    unsigned shift = schema.num_bits();
    for (const auto& f : schema.fields()) {
        shift -= f.width;
        assigns.push_back({f.name, (index >> shift) & ((BasisIndex{1} << f.width) - 1)});
    }
    std::shuffle(assigns.begin(), assigns.end(), rng);
    return assigns;
}

BoolExpr random_combiner(std::mt19937_64& rng, const std::vector<std::string>& flags, int depth = 2) {
    if (flags.empty() || rng() % 10 == 0) return BoolExpr::constant(rng() % 4 != 0);
    if (depth == 0 || rng() % 3 == 0) return BoolExpr::var(flags[rng() % flags.size()]);
    switch (rng() % 3) {
        case 0: return BoolExpr::negate(random_combiner(rng, flags, depth - 1));
        case 1: return BoolExpr::both(random_combiner(rng, flags, depth - 1), random_combiner(rng, flags, depth - 1));
        default: return BoolExpr::either(random_combiner(rng, flags, depth - 1), random_combiner(rng, flags, depth - 1));
    }
}

qlang::Command build(std::mt19937_64& rng, const ReferenceModel& model, StatementKind kind,
                     const std::string& save_path) {
    const TableSchema& schema = model.schema();
    const BasisIndex records = schema.num_records();
    const auto any_record = [&] { return static_cast<BasisIndex>(rng() % records); };
    switch (kind) {
        case StatementKind::InsertAll: return qlang::InsertAll{rng() % (schema.num_bits() + 1)};
        case StatementKind::InsertSeq: {
            const BasisIndex from = model.fill().value_or(0) + 1;
            return qlang::InsertSeq{from + rng() % std::max<BasisIndex>(1, records - from)};
        }
        case StatementKind::InsertValues: {
            const BasisIndex first = model.fill().value_or(0) == 0 ? 0 : *model.fill() + 1;
            std::set<BasisIndex> picked;
            const std::size_t count = 1 + rng() % 3;
            for (std::size_t i = 0; i < count && first < records; ++i) picked.insert(first + rng() % (records - first));
            qlang::InsertValues v;
            for (BasisIndex r : picked) v.records.push_back(literal(rng, schema, r));
            std::shuffle(v.records.begin(), v.records.end(), rng);
            return v;
        }
        case StatementKind::Update: {
            const auto live = model.live();
            std::vector<BasisIndex> live_list(live.begin(), live.end());
            qlang::Update u;
            std::set<BasisIndex> used;
            const std::size_t count = 1 + rng() % 2;
            for (std::size_t i = 0; i < count; ++i) {
                const BasisIndex from = live_list.empty() || rng() % 4 == 0 ? any_record() : live_list[rng() % live_list.size()];
                const BasisIndex to = any_record();
                if (from == to || used.count(from) || used.count(to)) continue;
                used.insert(from);
                used.insert(to);
                u.pairs.emplace_back(literal(rng, schema, from), literal(rng, schema, to));
            }
            if (u.pairs.empty()) u.pairs.emplace_back(literal(rng, schema, 0), literal(rng, schema, 0));
            return u;
        }
        case StatementKind::Delete: {
            qlang::Delete d{random_expr(rng, schema), std::nullopt};
            if (rng() % 5 == 0) d.amplify = 1 + rng() % 2;
            return d;
        }
        case StatementKind::Select: return qlang::Select{"c" + std::to_string(1 + rng() % 3), random_expr(rng, schema)};
        case StatementKind::Apply: {
            qlang::Apply a{qlang::BitGate{}, random_combiner(rng, model.flag_names())};
            const int g = static_cast<int>(rng() % 10);
            if (g < 7 || records < 2) {
                const auto& f = schema.fields()[rng() % schema.fields().size()];
                a.gate = qlang::BitGate{g < 5 ? qlang::SingleGate::Not : qlang::SingleGate::H, f.name, rng() % f.width};
            } else {
                const BasisIndex x = any_record();
                const BasisIndex y = (x + 1 + rng() % (records - 1)) % records;
                a.gate = qlang::RecordSwap{literal(rng, schema, x), literal(rng, schema, y)};
            }
            return a;
        }
        case StatementKind::Backup: return qlang::Backup{random_expr(rng, schema)};
        case StatementKind::Restore: return qlang::Restore{rng() % 2 == 0};
        case StatementKind::Measure: {
            qlang::Measure m{1 + rng() % 64, std::nullopt};
            if (rng() % 2 == 0) m.seed = rng() % 1000;
            return m;
        }
        case StatementKind::Show: return qlang::Show{rng() % 4 == 0};
        case StatementKind::Save: return qlang::Save{save_path};
        case StatementKind::Load: return qlang::Load{save_path};
    }
    return qlang::Show{};
}

}  // namespace

qlang::Command random_statement(std::mt19937_64& rng, ReferenceModel& model, const std::string& save_path,
                                const std::vector<StatementKind>& kinds) {
    static const std::vector<std::pair<StatementKind, int>> weights = {
        {StatementKind::InsertAll, 1}, {StatementKind::InsertSeq, 3}, {StatementKind::InsertValues, 3},
        {StatementKind::Update, 4},    {StatementKind::Delete, 4},    {StatementKind::Select, 4},
        {StatementKind::Apply, 4},     {StatementKind::Backup, 2},    {StatementKind::Restore, 2},
        {StatementKind::Measure, 1},   {StatementKind::Show, 1},      {StatementKind::Save, 1},
        {StatementKind::Load, 1}};
    std::vector<std::pair<StatementKind, int>> pool;
    for (const auto& w : weights) {
        if (kinds.empty() || std::count(kinds.begin(), kinds.end(), w.first)) pool.push_back(w);
    }
    int total = 0;
    for (const auto& w : pool) total += w.second;
    for (int attempt = 0; attempt < 200; ++attempt) {
        int pick = static_cast<int>(rng() % static_cast<unsigned>(total));
        StatementKind kind = pool.front().first;
        for (const auto& w : pool) {
            if (pick < w.second) {
                kind = w.first;
                break;
            }
            pick -= w.second;
        }
        qlang::Command c = build(rng, model, kind, save_path);
        ReferenceModel trial = model;
        try {
            trial.execute(c);
        } catch (const ModelRejects&) {
            continue;
        }
        model = std::move(trial);
        return c;
    }
    return qlang::Show{};
}

namespace {

qlang::CreateTable random_create(std::mt19937_64& rng, unsigned temps) {
    const TableSchema schema = random_schema(rng, 1, 6);
    qlang::CreateTable c{schema.name(), {}, temps};
    for (const auto& f : schema.fields()) c.fields.push_back(qlang::FieldDecl{f.name, f.width});
    return c;
}

std::string temp_file(std::uint64_t seed) {
    return (std::filesystem::temp_directory_path() / ("qqldb_model_" + std::to_string(seed) + ".qdb")).string();
}

void check_step(ConformanceReport& report, const Session& session, const ReferenceModel& model,
                const std::string& where) {
    if (report.failures.size() >= 5) return;
    const auto engine_live = session.database().live_support();
    const auto engine_safe = session.database().safe_support();
    if (engine_live != model.live() || engine_safe != model.protected_records()) {
        report.failures.push_back(where + ": engine live " + describe(engine_live) + " safe " +
                                  describe(engine_safe) + ", model live " + describe(model.live()) + " safe " +
                                  describe(model.protected_records()));
    }
}

}  // namespace

ConformanceReport run_conformance(std::uint64_t seed, std::size_t scripts, unsigned statements_per_script) {
    ConformanceReport report;
    std::mt19937_64 rng(seed);
    const std::string path = temp_file(seed);
    for (std::size_t k = 0; k < scripts; ++k) {
        const qlang::CreateTable create = random_create(rng, 3 + static_cast<unsigned>(rng() % 2));
        ReferenceModel model = ReferenceModel::create(create);
        std::vector<qlang::Command> commands{create};
        std::vector<ReferenceModel> expected{model};
        for (unsigned i = 0; i < statements_per_script; ++i) {
            commands.push_back(random_statement(rng, model, path));
            expected.push_back(model);
        }
        std::string text;
        for (const auto& c : commands) text += qlang::to_qql(c) + "\n";

        const auto parsed = qlang::parse(text);
        if (parsed.size() != commands.size()) {
            report.failures.push_back("script " + std::to_string(k) + " did not parse back:\n" + text);
            continue;
        }
        Session session;
        for (std::size_t i = 0; i < parsed.size(); ++i) {
            const std::string where = "script " + std::to_string(k) + " statement " + std::to_string(i + 1);
            if (!(parsed[i].command == commands[i])) {
                report.failures.push_back(where + " changed in print/parse:\n" + text);
                break;
            }
            try {
                session.execute(parsed[i]);
            } catch (const Error& e) {
                report.failures.push_back(where + " failed: " + e.what() + "\n" + text);
                break;
            }
            ++report.statements;
            const std::size_t before = report.failures.size();
            check_step(report, session, expected[i], where);
            if (report.failures.size() != before) {
                report.failures.back() += "\n" + text;
                break;
            }
        }
        ++report.scenarios;
    }
    std::filesystem::remove(path);
    return report;
}

ConformanceReport run_restore_scenarios(std::uint64_t seed, std::size_t scenarios) {
    using K = StatementKind;
    ConformanceReport report;
    std::mt19937_64 rng(seed);
    const std::string path = temp_file(seed);
    while (report.scenarios < scenarios) {
        const qlang::CreateTable create = random_create(rng, 4);
        ReferenceModel model = ReferenceModel::create(create);
        Session session;
        std::vector<qlang::Command> commands{create};
        commands.push_back(random_statement(rng, model, path, {K::InsertAll, K::InsertSeq, K::InsertValues}));

        // Find a predicate that covers at least one live record.
        const ReferenceModel filled = model;
        std::optional<BoolExpr> e;
        std::set<BasisIndex> covered;
        for (int attempt = 0; attempt < 50 && !e; ++attempt) {
            BoolExpr candidate = random_expr(rng, model.schema());
            covered.clear();
            for (BasisIndex r : filled.live()) {
                if (eval_on_index(candidate, model.schema(), r)) covered.insert(r);
            }
            if (!covered.empty()) e = candidate;
        }
        if (!e) continue;
        commands.push_back(qlang::Backup{*e});
        model.execute(commands.back());
        const unsigned corruptions = 1 + static_cast<unsigned>(rng() % 4);
        for (unsigned i = 0; i < corruptions; ++i) {
            commands.push_back(random_statement(rng, model, path, {K::Update, K::Delete, K::Select, K::Apply, K::InsertAll}));
        }
        commands.push_back(qlang::Restore{false});
        model.execute(commands.back());

        std::string text;
        for (const auto& c : commands) text += qlang::to_qql(c) + "\n";
        const std::string where = "scenario " + std::to_string(report.scenarios);
        try {
            for (const auto& c : commands) session.execute(qlang::Statement{c, {1, 1}});
        } catch (const Error& err) {
            report.failures.push_back(where + " failed: " + err.what() + "\n" + text);
            ++report.scenarios;
            continue;
        }
        report.statements += commands.size();
        const auto live = session.database().live_support();
        for (BasisIndex r : covered) {
            if (!live.count(r)) {
                report.failures.push_back(where + ": backed-up record " + std::to_string(r) + " not restored\n" + text);
                break;
            }
        }
        check_step(report, session, model, where);
        ++report.scenarios;
    }
    std::filesystem::remove(path);
    return report;
}

}  // namespace qqldb::testing
