#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "eod/embedding.hpp"
#include "eod/execution.hpp"

namespace eod {

// Exhaustive reference algorithms. Their cost is exponential in the number
// of free attributes (schema minus embedding), so every entry point refuses
// with CapExceeded above a configurable cap instead of running away.

struct OracleOptions {
    std::size_t cap = 20;
    /// Throws Timeout once passed. Checked between candidate embeddings.
    std::optional<std::chrono::steady_clock::time_point> deadline;
    Execution execution = Execution::Serial;
};

/// Tries every embedding E' ⊇ E as a subset of the schema, smallest first,
/// ties in lexicographic id order, and reports the first one that passes.
ValidationOutcome naive_validate(const Relation& r, const Statement& stmt, const OracleOptions& options = {});

struct IgnoredChoice {
    Embedding embedding;
    std::size_t ignored = 0;

    friend bool operator==(const IgnoredChoice&, const IgnoredChoice&) = default;
};

/// Among all E' ⊇ E under which the statement holds, one with the fewest
/// ignored tuples (ties: smaller |E'|, then lexicographic). nullopt iff none.
std::optional<IgnoredChoice> min_ignored_embedding(const Relation& r, const Statement& stmt,
                                                   const OracleOptions& options = {});

/// Weighted set-cover view of the repair problem: the violating pairs to
/// cover, and for every free attribute with nulls the pairs it deletes and
/// the tuples of r^E it would newly ignore.
struct CoverInstance {
    std::vector<ViolationPair> pairs;
    std::vector<AttrId> attributes;
    std::vector<std::vector<std::size_t>> covers;  // indices into pairs, per attribute
    std::vector<std::size_t> weights;              // per attribute
};

CoverInstance build_cover_instance(const MissingIndex& idx, const Embedding& e,
                                   std::span<const ViolationPair> pairs);

/// Every violating pair of r^E, by direct all-pairs evaluation. Quadratic.
std::vector<ViolationPair> all_violating_pairs(const Relation& r, const Statement& stmt);

/// Exact optimum through the cover formulation: enumerates attribute subsets
/// that cover every violating pair of r^E. Same tie-break as
/// min_ignored_embedding, independent of the detector.
std::optional<IgnoredChoice> cover_min_ignored(const Relation& r, const Statement& stmt,
                                               const OracleOptions& options = {});

/// Greedy weighted set cover with weights recomputed against the growing
/// embedding, rerun against fresh detections until the statement holds.
std::optional<IgnoredChoice> greedy_min_ignored(const Relation& r, const Statement& stmt);

/// The reduction instance: tuples s^1..s^n with X = i and Y = floor((i+1)/2)
/// plus one extra attribute per plan entry, Null on the listed 1-based tuple
/// indices (other cells hold i). n must be even and >= 2; a tuple may be
/// Null on at most one attribute. Throws ConfigError otherwise.
Relation gen_hardness_instance(std::size_t n, const std::map<std::string, std::set<std::size_t>>& null_plan = {});

}  // namespace eod
