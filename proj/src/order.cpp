#include "eod/order.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "eod/errors.hpp"

namespace eod {

std::string_view operator_symbol(Operator op) noexcept {
    return op == Operator::Leq ? "<=" : "<";
}

std::string_view violation_kind_name(ViolationKind k) noexcept {
    return k == ViolationKind::Swap ? "swap" : "merge";
}

ViolationPair ViolationPair::make(TupleId s, TupleId t, ViolationKind kind) {
    if (s == t) throw ContractViolation("violation pair needs two distinct tuples");
    return s < t ? ViolationPair{s, t, kind} : ViolationPair{t, s, kind};
}

void check_statement(const Relation& r, const Statement& stmt) {
    auto check_list = [&](const AttributeList& list, const char* side) {
        if (list.empty()) throw SchemaError(std::string(side) + " attribute list is empty");
        std::set<AttrId> seen;
        for (AttrId a : list) {
            if (a >= r.num_attributes()) {
                throw SchemaError(std::string(side) + " references unknown attribute #" + std::to_string(a));
            }
            if (!seen.insert(a).second) {
                throw SchemaError(std::string(side) + " repeats attribute '" + r.attribute(a).name + "'");
            }
        }
    };
    check_list(stmt.lhs, "left-hand side");
    check_list(stmt.rhs, "right-hand side");
    for (AttrId a : stmt.embedding) {
        if (a >= r.num_attributes()) {
            throw SchemaError("embedding references unknown attribute #" + std::to_string(a));
        }
    }
    if (!stmt.embedding.includes(stmt.lhs) || !stmt.embedding.includes(stmt.rhs)) {
        throw SchemaError("embedding must contain every attribute of both sides");
    }
    if (stmt.lhs != stmt.rhs) {
        for (AttrId a : stmt.lhs) {
            if (std::find(stmt.rhs.begin(), stmt.rhs.end(), a) != stmt.rhs.end()) {
                throw SchemaError("sides overlap on '" + r.attribute(a).name + "' without being identical");
            }
        }
    }
}

std::strong_ordering compare_lists(const Relation& r, TupleId s, TupleId t, const AttributeList& list) {
    for (AttrId a : list) {
        const std::int32_t rs = r.rank(s, a);
        const std::int32_t rt = r.rank(t, a);
        if (rs < 0 || rt < 0) {
            throw ContractViolation("Null on attribute '" + r.attribute(a).name + "' in a list comparison");
        }
        if (rs != rt) return rs <=> rt;
    }
    return std::strong_ordering::equal;
}

namespace {

void require_complete(const Relation& r, const AttributeList& list, std::span<const TupleId> ids) {
    for (TupleId t : ids) {
        if (t >= r.num_rows()) throw ContractViolation("tuple id out of range");
        for (AttrId a : list) {
            if (r.is_null(t, a)) {
                throw ContractViolation("tuple " + std::to_string(t) + " is Null on '" +
                                        r.attribute(a).name + "'");
            }
        }
    }
}

// Stable counting sort: the positions of `input`, reordered by key. Keys are
// dense nonnegative ranks, so this is linear in the input plus the key range.
std::vector<std::size_t> counting_order(std::span<const std::int32_t> keys, std::span<const std::size_t> input) {
    std::int32_t top = -1;
    for (std::size_t i : input) top = std::max(top, keys[i]);
    std::vector<std::size_t> start(static_cast<std::size_t>(top) + 2, 0);
    for (std::size_t i : input) ++start[static_cast<std::size_t>(keys[i]) + 1];
    std::partial_sum(start.begin(), start.end(), start.begin());
    std::vector<std::size_t> out(input.size());
    for (std::size_t i : input) out[start[static_cast<std::size_t>(keys[i])]++] = i;
    return out;
}

std::vector<std::size_t> positions_by_id(std::span<const TupleId> ids) {
    std::vector<std::size_t> pos(ids.size());
    std::iota(pos.begin(), pos.end(), std::size_t{0});
    if (!std::is_sorted(ids.begin(), ids.end())) {
        std::sort(pos.begin(), pos.end(), [&](std::size_t i, std::size_t j) { return ids[i] < ids[j]; });
    }
    return pos;
}

// Dense order keys of the given tuples on a list, parallel to ids. Equal keys
// iff equal on every attribute of the list; key order is lexicographic order.
std::vector<std::int32_t> list_keys(const Relation& r, const AttributeList& list,
                                    std::span<const TupleId> ids) {
    std::vector<std::int32_t> keys(ids.size());
    if (list.size() == 1) {
        const auto ranks = r.ranks(list.front());
        for (std::size_t i = 0; i < ids.size(); ++i) keys[i] = ranks[ids[i]];
        return keys;
    }
    // LSD radix over the list, last attribute first.
    std::vector<std::size_t> order(ids.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<std::int32_t> column(ids.size());
    for (auto it = list.rbegin(); it != list.rend(); ++it) {
        const auto ranks = r.ranks(*it);
        for (std::size_t i = 0; i < ids.size(); ++i) column[i] = ranks[ids[i]];
        order = counting_order(column, order);
    }
    auto same = [&](std::size_t i, std::size_t j) {
        for (AttrId a : list) {
            if (r.rank(ids[i], a) != r.rank(ids[j], a)) return false;
        }
        return true;
    };
    std::int32_t next = -1;
    for (std::size_t k = 0; k < order.size(); ++k) {
        if (k == 0 || !same(order[k - 1], order[k])) ++next;
        keys[order[k]] = next;
    }
    return keys;
}

// One sweep over tuples sorted by (lhs key, id). Classes are runs of equal
// lhs key. Emits one witness per offending member:
//  - swap against the holder of the largest rhs key among earlier classes;
//  - for <=, a split against the first member of its own class;
//  - for <, a merge against the last earlier-class tuple with the same rhs key.
ErrorSets scan_sorted(std::span<const detail::KeyedTuple> sorted, Operator op) {
    ErrorSets out;
    if (sorted.empty()) return out;

    std::vector<std::int64_t> seen;  // rhs key -> tuple id from an earlier class, or -1
    if (op == Operator::Lt) {
        std::int32_t max_key = 0;
        for (const auto& e : sorted) max_key = std::max(max_key, e.rhs);
        seen.assign(static_cast<std::size_t>(max_key) + 1, -1);
    }

    bool have_max = false;
    std::int32_t max_rhs = 0;
    TupleId max_id = 0;
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j].lhs == sorted[i].lhs) ++j;

        std::int32_t cls_max = sorted[i].rhs;
        TupleId cls_max_id = sorted[i].id;
        for (std::size_t k = i; k < j; ++k) {
            const auto& e = sorted[k];
            if (have_max && e.rhs < max_rhs) {
                out.swaps.push_back(ViolationPair::make(max_id, e.id, ViolationKind::Swap));
            }
            if (op == Operator::Leq) {
                if (e.rhs != sorted[i].rhs) {
                    out.merges.push_back(ViolationPair::make(sorted[i].id, e.id, ViolationKind::Merge));
                }
            } else if (const auto prev = seen[static_cast<std::size_t>(e.rhs)]; prev >= 0) {
                out.merges.push_back(
                    ViolationPair::make(static_cast<TupleId>(prev), e.id, ViolationKind::Merge));
            }
            if (e.rhs > cls_max) {
                cls_max = e.rhs;
                cls_max_id = e.id;
            }
        }
        if (op == Operator::Lt) {
            for (std::size_t k = i; k < j; ++k) {
                seen[static_cast<std::size_t>(sorted[k].rhs)] = static_cast<std::int64_t>(sorted[k].id);
            }
        }
        if (!have_max || cls_max > max_rhs) {
            have_max = true;
            max_rhs = cls_max;
            max_id = cls_max_id;
        }
        i = j;
    }

    for (auto* v : {&out.swaps, &out.merges}) {
        std::sort(v->begin(), v->end());
        v->erase(std::unique(v->begin(), v->end()), v->end());
    }
    return out;
}

}  // namespace

std::vector<Value> SortedPartition::key(const Relation& r, std::size_t cls) const {
    std::vector<Value> out;
    const TupleId rep = members(cls).front();
    for (AttrId a : list_) out.push_back(r.value(rep, a));
    return out;
}

SortedPartition build_sorted_partition(const Relation& r, const AttributeList& list,
                                       std::span<const TupleId> universe) {
    require_complete(r, list, universe);
    SortedPartition p;
    p.list_ = list;
    const auto keys = list_keys(r, list, universe);
    const auto idx = counting_order(keys, positions_by_id(universe));
    p.order_.reserve(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) {
        if (k > 0 && keys[idx[k]] != keys[idx[k - 1]]) p.offsets_.push_back(k);
        p.order_.push_back(universe[idx[k]]);
    }
    if (!idx.empty()) p.offsets_.push_back(idx.size());
    return p;
}

ErrorSets find_errors(const Relation& r, const Statement& stmt, std::span<const TupleId> universe) {
    require_complete(r, stmt.lhs, universe);
    require_complete(r, stmt.rhs, universe);

    const SortedPartition part = build_sorted_partition(r, stmt.lhs, universe);
    const auto order = part.order();
    const auto rhs = list_keys(r, stmt.rhs, order);

    std::vector<detail::KeyedTuple> sorted;
    sorted.reserve(order.size());
    std::size_t pos = 0;
    for (std::size_t cls = 0; cls < part.num_classes(); ++cls) {
        for (TupleId t : part.members(cls)) {
            sorted.push_back({t, static_cast<std::int32_t>(cls), rhs[pos]});
            ++pos;
        }
    }
    return scan_sorted(sorted, stmt.op);
}

bool check_valid(const Relation& r, const Statement& stmt, std::span<const TupleId> universe) {
    return find_errors(r, stmt, universe).empty();
}

bool is_swap(const Relation& r, const Statement& stmt, TupleId s, TupleId t) {
    const auto x = compare_lists(r, s, t, stmt.lhs);
    const auto y = compare_lists(r, s, t, stmt.rhs);
    return (x < 0 && y > 0) || (x > 0 && y < 0);
}

bool is_merge(const Relation& r, const Statement& stmt, TupleId s, TupleId t) {
    const auto x = compare_lists(r, s, t, stmt.lhs);
    const auto y = compare_lists(r, s, t, stmt.rhs);
    if (stmt.op == Operator::Leq) return x == 0 && y != 0;
    return x != 0 && y == 0;
}

ErrorScanner::ErrorScanner(const Relation& r, const Statement& stmt) : op_(stmt.op) {
    std::vector<TupleId> complete;
    complete.reserve(r.num_rows());
    for (TupleId t = 0; t < r.num_rows(); ++t) {
        bool ok = true;
        for (AttrId a : stmt.lhs) ok = ok && !r.is_null(t, a);
        for (AttrId a : stmt.rhs) ok = ok && !r.is_null(t, a);
        if (ok) complete.push_back(t);
    }
    const auto lhs = list_keys(r, stmt.lhs, complete);
    const auto rhs = list_keys(r, stmt.rhs, complete);
    // complete is in id order, so the stable pass yields (lhs key, id) order.
    std::vector<std::size_t> pos(complete.size());
    std::iota(pos.begin(), pos.end(), std::size_t{0});
    sorted_.reserve(complete.size());
    for (std::size_t i : counting_order(lhs, pos)) sorted_.push_back({complete[i], lhs[i], rhs[i]});
}

ErrorSets ErrorScanner::scan(std::span<const std::uint8_t> mask) const {
    std::vector<detail::KeyedTuple> live;
    live.reserve(sorted_.size());
    for (const auto& e : sorted_) {
        if (mask[e.id]) live.push_back(e);
    }
    return scan_sorted(live, op_);
}

}  // namespace eod
