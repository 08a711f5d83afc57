#include "eod/embedding.hpp"

#include <algorithm>
#include <cassert>

#include "eod/errors.hpp"

namespace eod {

std::string_view verdict_name(Verdict v) noexcept {
    switch (v) {
        case Verdict::Valid: return "valid";
        case Verdict::ValidWith: return "valid with";
        case Verdict::NotValid: return "not valid";
    }
    return "?";
}

std::vector<ViolationPair> check_error_deletion(std::span<const ViolationPair> pairs, const Embedding& e,
                                                const MissingIndex& idx) {
    std::vector<ViolationPair> surviving;
    for (const auto& p : pairs) {
        if (present_in(idx, e, p.first) && present_in(idx, e, p.second)) surviving.push_back(p);
    }
    return surviving;
}

UpdateResult update_embedding(const Embedding& e, std::span<const ViolationPair> swaps,
                              std::span<const ViolationPair> merges, const MissingIndex& idx) {
    Embedding grown = e;
    const auto& nullable = idx.attributes_with_missing();
    for (auto pairs : {swaps, merges}) {
        for (const auto& p : pairs) {
            if (!present_in(idx, grown, p.first) || !present_in(idx, grown, p.second)) continue;
            bool deleted = false;
            for (AttrId a : nullable) {
                if (grown.contains(a)) continue;
                if (idx.is_missing(a, p.first) || idx.is_missing(a, p.second)) {
                    grown.insert(a);
                    deleted = true;
                    break;
                }
            }
            if (!deleted) return p;
        }
    }
    return grown;
}

std::size_t ignored_tuples(const MissingIndex& idx, const Embedding& from, const Embedding& to) {
    std::size_t count = 0;
    for (TupleId t = 0; t < idx.num_rows(); ++t) {
        if (present_in(idx, from, t) && !present_in(idx, to, t)) ++count;
    }
    return count;
}

ValidationOutcome validate_eod(const Relation& r, const Statement& stmt) {
    return validate_eod(r, build_missing_index(r), stmt);
}

ValidationOutcome validate_eod(const Relation& r, const MissingIndex& idx, const Statement& stmt) {
    check_statement(r, stmt);
    const auto start = std::chrono::steady_clock::now();

    ValidationOutcome out;
    out.embedding = stmt.embedding;
    auto finish = [&]() -> ValidationOutcome& {
        out.diagnostics.elapsed = std::chrono::steady_clock::now() - start;
        return out;
    };

    if (stmt.lhs == stmt.rhs || r.num_rows() <= 1) return finish();

    const ErrorScanner scanner(r, stmt);
    Embedding current = stmt.embedding;
    std::vector<std::uint8_t> mask = presence_mask(idx, current);
    const auto base_mask = mask;

    // Each pass either returns or grows the embedding by at least one
    // attribute, so the loop runs at most |schema| - |E| + 1 times.
    for (;;) {
        ++out.diagnostics.iterations;
        ErrorSets errors = scanner.scan(mask);
        if (out.diagnostics.iterations == 1) {
            out.diagnostics.swap_count = errors.swaps.size();
            out.diagnostics.merge_count = errors.merges.size();
            out.first_pass = errors;
        }
        if (errors.empty()) {
            out.verdict = current == stmt.embedding ? Verdict::Valid : Verdict::ValidWith;
            out.embedding = current;
            break;
        }

        const auto swaps = check_error_deletion(errors.swaps, current, idx);
        const auto merges = check_error_deletion(errors.merges, current, idx);
        UpdateResult next = update_embedding(current, swaps, merges, idx);
        if (auto* witness = std::get_if<ViolationPair>(&next)) {
            out.verdict = Verdict::NotValid;
            out.witness = *witness;
            out.embedding = stmt.embedding;
            break;
        }
        Embedding& grown = std::get<Embedding>(next);
        if (grown.size() <= current.size()) {
            throw ContractViolation("embedding update made no progress");
        }
        current = std::move(grown);
        mask = presence_mask(idx, current);
    }

    if (out.verdict == Verdict::ValidWith) {
        for (TupleId t = 0; t < mask.size(); ++t) {
            if (base_mask[t] && !mask[t]) ++out.diagnostics.ignored;
        }
    }
    return finish();
}

}  // namespace eod
