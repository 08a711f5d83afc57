#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "eod/relation.hpp"

namespace eod {

namespace detail {
struct KeyedTuple {
    TupleId id;
    std::int32_t lhs;
    std::int32_t rhs;
};
}  // namespace detail

/// ≤ : s_X ≤ t_X ⇒ s_Y ≤ t_Y.   < : s_X < t_X ⇒ s_Y < t_Y.
enum class Operator { Leq, Lt };

std::string_view operator_symbol(Operator op) noexcept;

/// E: X ↦op Y.
struct Statement {
    AttributeList lhs;
    AttributeList rhs;
    Operator op = Operator::Leq;
    Embedding embedding;
};

/// Throws SchemaError unless X and Y are nonempty, duplicate-free, known to
/// the schema, contained in E, and either disjoint or identical.
void check_statement(const Relation& r, const Statement& stmt);

enum class ViolationKind { Swap, Merge };

std::string_view violation_kind_name(ViolationKind k) noexcept;

/// A witness pair, always stored with first < second.
struct ViolationPair {
    TupleId first = 0;
    TupleId second = 0;
    ViolationKind kind = ViolationKind::Swap;

    static ViolationPair make(TupleId s, TupleId t, ViolationKind kind);

    friend bool operator==(const ViolationPair&, const ViolationPair&) = default;
    friend auto operator<=>(const ViolationPair&, const ViolationPair&) = default;
};

/// Witness sets of one detection pass. For ≤ statements `merges` holds the
/// pairs with equal X and different Y (splits on X,Y); for < statements the
/// pairs with different X and equal Y. Both vectors are sorted and unique.
struct ErrorSets {
    std::vector<ViolationPair> swaps;
    std::vector<ViolationPair> merges;

    bool empty() const noexcept { return swaps.empty() && merges.empty(); }
    std::size_t size() const noexcept { return swaps.size() + merges.size(); }
};

/// Lexicographic comparison of two tuples on an attribute list.
/// Throws ContractViolation when either tuple is Null on the list.
std::strong_ordering compare_lists(const Relation& r, TupleId s, TupleId t, const AttributeList& list);

/// Equivalence classes of a universe under equality on a list, in
/// increasing key order. Members within a class are in ascending id order.
class SortedPartition {
public:
    const AttributeList& sort_list() const noexcept { return list_; }
    std::size_t num_classes() const noexcept { return offsets_.size() - 1; }
    std::span<const TupleId> members(std::size_t cls) const {
        return {order_.data() + offsets_[cls], offsets_[cls + 1] - offsets_[cls]};
    }
    /// Values of the class on the sort list.
    std::vector<Value> key(const Relation& r, std::size_t cls) const;
    /// All members, class by class.
    std::span<const TupleId> order() const noexcept { return order_; }

private:
    friend SortedPartition build_sorted_partition(const Relation&, const AttributeList&,
                                                  std::span<const TupleId>);
    AttributeList list_;
    std::vector<TupleId> order_;
    std::vector<std::size_t> offsets_{0};
};

/// Throws ContractViolation if a tuple of the universe is Null on the list.
SortedPartition build_sorted_partition(const Relation& r, const AttributeList& list,
                                       std::span<const TupleId> universe);

/// Swap and merge/split witnesses of the statement restricted to the
/// universe. Empty iff the statement holds on the universe. The embedding of
/// the statement is ignored; the universe decides which tuples take part.
ErrorSets find_errors(const Relation& r, const Statement& stmt, std::span<const TupleId> universe);

/// True iff no violating pair exists in the universe.
bool check_valid(const Relation& r, const Statement& stmt, std::span<const TupleId> universe);

/// Direct evaluation of the violation predicates on one pair.
bool is_swap(const Relation& r, const Statement& stmt, TupleId s, TupleId t);
bool is_merge(const Relation& r, const Statement& stmt, TupleId s, TupleId t);

/// Reusable detector for repeated passes over shrinking universes of one
/// statement. Sorts the X∪Y-complete tuples once; every scan is linear.
class ErrorScanner {
public:
    ErrorScanner(const Relation& r, const Statement& stmt);

    /// Scans the tuples whose mask entry is nonzero.
    ErrorSets scan(std::span<const std::uint8_t> mask) const;

private:
    Operator op_;
    std::vector<detail::KeyedTuple> sorted_;
};

}  // namespace eod
