#pragma once

#include <chrono>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "eod/order.hpp"
#include "eod/relation.hpp"

namespace eod {

enum class Verdict { Valid, ValidWith, NotValid };

std::string_view verdict_name(Verdict v) noexcept;

struct Diagnostics {
    /// Witness counts of the first detection pass on r^E.
    std::size_t swap_count = 0;
    std::size_t merge_count = 0;
    /// |r^E - r^E'|.
    std::size_t ignored = 0;
    std::size_t iterations = 0;
    std::chrono::nanoseconds elapsed{0};
};

struct ValidationOutcome {
    Verdict verdict = Verdict::Valid;
    /// Final embedding. Equals the statement's embedding unless ValidWith.
    Embedding embedding;
    /// Present iff NotValid.
    std::optional<ViolationPair> witness;
    /// First-pass witness sets, as reported by the detector.
    ErrorSets first_pass;
    Diagnostics diagnostics;

    bool holds() const noexcept { return verdict != Verdict::NotValid; }
};

/// Keeps the pairs whose two tuples are both present in r^E.
std::vector<ViolationPair> check_error_deletion(std::span<const ViolationPair> pairs, const Embedding& e,
                                                const MissingIndex& idx);

/// Result of one embedding update: either the grown embedding or the first
/// pair that no single attribute of N can delete.
using UpdateResult = std::variant<Embedding, ViolationPair>;

/// Walks the swaps, then the merges. A pair already deleted under the
/// embedding built so far is skipped; otherwise the first attribute of N (in
/// schema order) on which one of its tuples is Null is added.
UpdateResult update_embedding(const Embedding& e, std::span<const ViolationPair> swaps,
                              std::span<const ViolationPair> merges, const MissingIndex& idx);

/// Validates E: X ↦op Y and, when it fails on r^E, grows E until the
/// statement holds or an undeletable violation is found. Detection is rerun
/// after each growth so a ValidWith embedding always passes check_valid.
/// Throws SchemaError for malformed statements.
ValidationOutcome validate_eod(const Relation& r, const Statement& stmt);
ValidationOutcome validate_eod(const Relation& r, const MissingIndex& idx, const Statement& stmt);

/// |r^from - r^to| for to ⊇ from.
std::size_t ignored_tuples(const MissingIndex& idx, const Embedding& from, const Embedding& to);

}  // namespace eod
