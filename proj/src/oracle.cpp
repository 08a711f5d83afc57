#include "eod/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>

#include "eod/errors.hpp"

namespace eod {

namespace {

using Clock = std::chrono::steady_clock;

std::vector<AttrId> free_attributes(const Relation& r, const Embedding& e) {
    std::vector<AttrId> out;
    for (AttrId a = 0; a < r.num_attributes(); ++a) {
        if (!e.contains(a)) out.push_back(a);
    }
    return out;
}

std::vector<AttrId> checked_free_attributes(const Relation& r, const Statement& stmt, const OracleOptions& options) {
    check_statement(r, stmt);
    auto free = free_attributes(r, stmt.embedding);
    if (free.size() > options.cap) throw CapExceeded(free.size(), options.cap);
    if (free.size() >= 63) throw CapExceeded(free.size(), 62);
    return free;
}

Embedding embedding_from_mask(const Embedding& base, const std::vector<AttrId>& free, std::uint64_t mask) {
    Embedding e = base;
    for (std::size_t i = 0; i < free.size(); ++i) {
        if (mask >> i & 1U) e.insert(free[i]);
    }
    return e;
}

bool holds_under(const Relation& r, const MissingIndex& idx, const Statement& stmt, const Embedding& e) {
    return check_valid(r, stmt, complete_tuples(idx, e));
}

bool expired(const OracleOptions& options) {
    return options.deadline && Clock::now() >= *options.deadline;
}

// All size-k index combinations of {0..n-1} in lexicographic order, as masks.
std::vector<std::uint64_t> combinations(std::size_t n, std::size_t k) {
    std::vector<std::uint64_t> out;
    std::vector<std::size_t> pick(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    for (;;) {
        std::uint64_t mask = 0;
        for (auto i : pick) mask |= std::uint64_t{1} << i;
        out.push_back(mask);
        std::size_t i = k;
        while (i > 0 && pick[i - 1] == n - k + (i - 1)) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
    return out;
}

// Ordering of candidate answers: fewer ignored tuples, then smaller, then lexicographic.
bool better(const IgnoredChoice& a, const IgnoredChoice& b) {
    if (a.ignored != b.ignored) return a.ignored < b.ignored;
    if (a.embedding.size() != b.embedding.size()) return a.embedding.size() < b.embedding.size();
    return a.embedding < b.embedding;
}

template <typename Accept>
std::optional<IgnoredChoice> best_subset(const MissingIndex& idx, const Embedding& base,
                                         const std::vector<AttrId>& free, const OracleOptions& options,
                                         Accept&& accept) {
    const std::uint64_t total = std::uint64_t{1} << free.size();
    auto evaluate = [&](std::uint64_t mask) -> std::optional<IgnoredChoice> {
        Embedding e = embedding_from_mask(base, free, mask);
        if (!accept(e)) return std::nullopt;
        const std::size_t ignored = ignored_tuples(idx, base, e);
        return IgnoredChoice{std::move(e), ignored};
    };

    std::optional<IgnoredChoice> best;
    if (options.execution == Execution::Serial) {
        for (std::uint64_t mask = 0; mask < total; ++mask) {
            if (expired(options)) throw Timeout();
            auto c = evaluate(mask);
            if (c && (!best || better(*c, *best))) best = std::move(c);
        }
        return best;
    }

    std::atomic<bool> timed_out{false};
    const auto count = static_cast<std::int64_t>(total);
#pragma omp parallel
    {
        std::optional<IgnoredChoice> local;
#pragma omp for schedule(dynamic, 16)
        for (std::int64_t i = 0; i < count; ++i) {
            if (timed_out.load(std::memory_order_relaxed)) continue;
            if (expired(options)) {
                timed_out.store(true);
                continue;
            }
            auto c = evaluate(static_cast<std::uint64_t>(i));
            if (c && (!local || better(*c, *local))) local = std::move(c);
        }
#pragma omp critical
        {
            if (local && (!best || better(*local, *best))) best = std::move(local);
        }
    }
    if (timed_out) throw Timeout();
    return best;
}

}  // namespace

ValidationOutcome naive_validate(const Relation& r, const Statement& stmt, const OracleOptions& options) {
    const auto free = checked_free_attributes(r, stmt, options);
    const auto start = Clock::now();
    const MissingIndex idx = build_missing_index(r);

    ValidationOutcome out;
    out.embedding = stmt.embedding;
    out.first_pass = find_errors(r, stmt, complete_tuples(idx, stmt.embedding));
    out.diagnostics.swap_count = out.first_pass.swaps.size();
    out.diagnostics.merge_count = out.first_pass.merges.size();

    std::optional<Embedding> found;
    std::size_t evaluated = 0;
    for (std::size_t k = 0; k <= free.size() && !found; ++k) {
        const auto level = combinations(free.size(), k);
        std::int64_t hit = -1;
        if (options.execution == Execution::Serial) {
            for (std::size_t i = 0; i < level.size(); ++i) {
                if (expired(options)) throw Timeout();
                if (holds_under(r, idx, stmt, embedding_from_mask(stmt.embedding, free, level[i]))) {
                    hit = static_cast<std::int64_t>(i);
                    break;
                }
            }
        } else {
            std::int64_t first = std::numeric_limits<std::int64_t>::max();
            std::atomic<bool> timed_out{false};
            const auto count = static_cast<std::int64_t>(level.size());
#pragma omp parallel for schedule(dynamic, 4) reduction(min : first)
            for (std::int64_t i = 0; i < count; ++i) {
                if (i > first || timed_out.load(std::memory_order_relaxed)) continue;
                if (expired(options)) {
                    timed_out.store(true);
                    continue;
                }
                if (holds_under(r, idx, stmt,
                                embedding_from_mask(stmt.embedding, free, level[static_cast<std::size_t>(i)]))) {
                    first = std::min(first, i);
                }
            }
            if (timed_out) throw Timeout();
            if (first != std::numeric_limits<std::int64_t>::max()) hit = first;
        }
        if (hit >= 0) {
            evaluated += static_cast<std::size_t>(hit) + 1;
            found = embedding_from_mask(stmt.embedding, free, level[static_cast<std::size_t>(hit)]);
        } else {
            evaluated += level.size();
        }
    }
    out.diagnostics.iterations = evaluated;

    if (!found) {
        Embedding everything;
        for (AttrId a = 0; a < r.num_attributes(); ++a) everything.insert(a);
        const auto residual = find_errors(r, stmt, complete_tuples(idx, everything));
        out.verdict = Verdict::NotValid;
        out.witness = residual.swaps.empty() ? residual.merges.front() : residual.swaps.front();
    } else if (*found == stmt.embedding) {
        out.verdict = Verdict::Valid;
    } else {
        out.verdict = Verdict::ValidWith;
        out.embedding = *found;
        out.diagnostics.ignored = ignored_tuples(idx, stmt.embedding, *found);
    }
    out.diagnostics.elapsed = Clock::now() - start;
    return out;
}

std::optional<IgnoredChoice> min_ignored_embedding(const Relation& r, const Statement& stmt,
                                                   const OracleOptions& options) {
    const auto free = checked_free_attributes(r, stmt, options);
    const MissingIndex idx = build_missing_index(r);
    return best_subset(idx, stmt.embedding, free, options,
                       [&](const Embedding& e) { return holds_under(r, idx, stmt, e); });
}

CoverInstance build_cover_instance(const MissingIndex& idx, const Embedding& e,
                                   std::span<const ViolationPair> pairs) {
    CoverInstance inst;
    inst.pairs.assign(pairs.begin(), pairs.end());
    const auto present = presence_mask(idx, e);
    for (AttrId a : idx.attributes_with_missing()) {
        if (e.contains(a)) continue;
        std::vector<std::size_t> cover;
        for (std::size_t i = 0; i < inst.pairs.size(); ++i) {
            const auto& p = inst.pairs[i];
            if (idx.is_missing(a, p.first) || idx.is_missing(a, p.second)) cover.push_back(i);
        }
        std::size_t weight = 0;
        for (TupleId t : idx.missing(a)) weight += present[t];
        inst.attributes.push_back(a);
        inst.covers.push_back(std::move(cover));
        inst.weights.push_back(weight);
    }
    return inst;
}

std::vector<ViolationPair> all_violating_pairs(const Relation& r, const Statement& stmt) {
    check_statement(r, stmt);
    const MissingIndex idx = build_missing_index(r);
    const auto universe = complete_tuples(idx, stmt.embedding);
    std::vector<ViolationPair> out;
    for (std::size_t i = 0; i < universe.size(); ++i) {
        for (std::size_t j = i + 1; j < universe.size(); ++j) {
            const TupleId s = universe[i];
            const TupleId t = universe[j];
            if (is_swap(r, stmt, s, t)) {
                out.push_back(ViolationPair::make(s, t, ViolationKind::Swap));
            } else if (is_merge(r, stmt, s, t)) {
                out.push_back(ViolationPair::make(s, t, ViolationKind::Merge));
            }
        }
    }
    return out;
}

std::optional<IgnoredChoice> cover_min_ignored(const Relation& r, const Statement& stmt,
                                               const OracleOptions& options) {
    const auto free = checked_free_attributes(r, stmt, options);
    const MissingIndex idx = build_missing_index(r);
    const auto pairs = all_violating_pairs(r, stmt);
    return best_subset(idx, stmt.embedding, free, options, [&](const Embedding& e) {
        return std::all_of(pairs.begin(), pairs.end(), [&](const ViolationPair& p) {
            return !present_in(idx, e, p.first) || !present_in(idx, e, p.second);
        });
    });
}

std::optional<IgnoredChoice> greedy_min_ignored(const Relation& r, const Statement& stmt) {
    check_statement(r, stmt);
    const MissingIndex idx = build_missing_index(r);
    Embedding current = stmt.embedding;

    for (;;) {
        const ErrorSets errors = find_errors(r, stmt, complete_tuples(idx, current));
        if (errors.empty()) {
            return IgnoredChoice{current, ignored_tuples(idx, stmt.embedding, current)};
        }
        std::vector<ViolationPair> pairs = errors.swaps;
        pairs.insert(pairs.end(), errors.merges.begin(), errors.merges.end());
        const CoverInstance inst = build_cover_instance(idx, current, pairs);

        std::vector<std::uint8_t> covered(pairs.size(), 0);
        for (const auto& cover : inst.covers) {
            for (auto i : cover) covered[i] = 1;
        }
        if (std::find(covered.begin(), covered.end(), 0) != covered.end()) return std::nullopt;
        std::fill(covered.begin(), covered.end(), 0);
        std::size_t remaining = pairs.size();

        std::vector<std::uint8_t> taken(inst.attributes.size(), 0);
        while (remaining > 0) {
            const auto present = presence_mask(idx, current);
            std::optional<std::size_t> pick;
            std::size_t pick_weight = 0;
            std::size_t pick_gain = 0;
            for (std::size_t k = 0; k < inst.attributes.size(); ++k) {
                if (taken[k]) continue;
                std::size_t gain = 0;
                for (auto i : inst.covers[k]) gain += covered[i] ? 0 : 1;
                if (gain == 0) continue;
                std::size_t weight = 0;
                for (TupleId t : idx.missing(inst.attributes[k])) weight += present[t];
                // weight/gain < pick_weight/pick_gain, ties to the larger gain.
                const bool wins = !pick || weight * pick_gain < pick_weight * gain ||
                                  (weight * pick_gain == pick_weight * gain && gain > pick_gain);
                if (wins) {
                    pick = k;
                    pick_weight = weight;
                    pick_gain = gain;
                }
            }
            taken[*pick] = 1;
            current.insert(inst.attributes[*pick]);
            for (auto i : inst.covers[*pick]) {
                if (!covered[i]) {
                    covered[i] = 1;
                    --remaining;
                }
            }
        }
    }
}

Relation gen_hardness_instance(std::size_t n, const std::map<std::string, std::set<std::size_t>>& null_plan) {
    if (n < 2 || n % 2 != 0) throw ConfigError("hardness instance needs an even tuple count >= 2");
    std::vector<int> nulls_per_tuple(n + 1, 0);
    for (const auto& [name, tuples] : null_plan) {
        if (name == "X" || name == "Y") throw ConfigError("plan attribute may not be named X or Y");
        for (auto i : tuples) {
            if (i < 1 || i > n) throw ConfigError("plan tuple index " + std::to_string(i) + " out of range");
            if (++nulls_per_tuple[i] > 1) {
                throw ConfigError("tuple s" + std::to_string(i) + " would have more than one missing value");
            }
        }
    }
    std::vector<std::string> names{"X", "Y"};
    std::vector<std::vector<Value>> columns(2);
    for (std::size_t i = 1; i <= n; ++i) {
        columns[0].push_back(Value::number(static_cast<std::int64_t>(i)));
        columns[1].push_back(Value::number(static_cast<std::int64_t>((i + 1) / 2)));
    }
    for (const auto& [name, tuples] : null_plan) {
        names.push_back(name);
        auto& col = columns.emplace_back();
        for (std::size_t i = 1; i <= n; ++i) {
            col.push_back(tuples.contains(i) ? Value::null() : Value::number(static_cast<std::int64_t>(i)));
        }
    }
    return Relation(std::move(names), std::move(columns));
}

}  // namespace eod
