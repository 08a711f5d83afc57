#include "eod/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>
#include <ostream>
#include <random>

#include <json.hpp>

#include "eod/errors.hpp"
#include "eod/oracle.hpp"

namespace eod {

std::string_view side_name(Side s) noexcept { return s == Side::Lhs ? "lhs" : "rhs"; }

std::string_view algorithm_name(Algorithm a) noexcept {
    switch (a) {
        case Algorithm::ValidEod: return "validEOD";
        case Algorithm::Naive: return "naive";
        case Algorithm::Both: return "both";
    }
    return "?";
}

namespace {

std::string verdict_token(Verdict v) {
    switch (v) {
        case Verdict::Valid: return "valid";
        case Verdict::ValidWith: return "valid_with";
        case Verdict::NotValid: return "not_valid";
    }
    return "?";
}

void validate_config(const Relation& r, const SweepConfig& cfg) {
    if (cfg.repetitions < 1) throw ConfigError("repetitions must be >= 1");
    if (cfg.fixed_size < 1) throw ConfigError("fixed side size must be >= 1");
    if (cfg.sizes.empty()) throw ConfigError("no sizes requested");
    for (auto s : cfg.sizes) {
        if (s < 1) throw ConfigError("sizes must be >= 1");
        if (s + cfg.fixed_size > r.num_attributes()) {
            throw ConfigError("size " + std::to_string(s) + " plus fixed side " + std::to_string(cfg.fixed_size) +
                              " exceeds the " + std::to_string(r.num_attributes()) + " attributes");
        }
    }
}

double to_us(std::chrono::nanoseconds d) { return static_cast<double>(d.count()) / 1000.0; }

}  // namespace

SweepResult run_sweep(const Relation& r, const SweepConfig& cfg) {
    validate_config(r, cfg);
    const MissingIndex idx = build_missing_index(r);
    std::mt19937_64 rng(cfg.seed);

    SweepResult result;
    std::vector<AttrId> attrs(r.num_attributes());
    for (auto size : cfg.sizes) {
        const std::size_t lhs_size = cfg.side == Side::Lhs ? size : cfg.fixed_size;
        const std::size_t rhs_size = cfg.side == Side::Lhs ? cfg.fixed_size : size;
        for (std::size_t rep = 0; rep < cfg.repetitions; ++rep) {
            std::iota(attrs.begin(), attrs.end(), AttrId{0});
            const std::size_t need = lhs_size + rhs_size;
            for (std::size_t i = 0; i < need; ++i) {
                std::uniform_int_distribution<std::size_t> pick(i, attrs.size() - 1);
                std::swap(attrs[i], attrs[pick(rng)]);
            }
            SweepRow row;
            row.size = size;
            row.rep = rep;
            row.side = cfg.side;
            row.lhs.assign(attrs.begin(), attrs.begin() + static_cast<std::ptrdiff_t>(lhs_size));
            row.rhs.assign(attrs.begin() + static_cast<std::ptrdiff_t>(lhs_size),
                           attrs.begin() + static_cast<std::ptrdiff_t>(need));

            Statement stmt{row.lhs, row.rhs, cfg.op, {}};
            for (AttrId a : row.lhs) stmt.embedding.insert(a);
            for (AttrId a : row.rhs) stmt.embedding.insert(a);

            bool have_outcome = false;
            if (cfg.algorithm != Algorithm::Naive) {
                const ValidationOutcome o = validate_eod(r, idx, stmt);
                row.verdict = o.verdict;
                row.s_count = o.diagnostics.swap_count;
                row.m_count = o.diagnostics.merge_count;
                row.ignored = o.diagnostics.ignored;
                row.time_valid_eod_us = to_us(o.diagnostics.elapsed);
                have_outcome = true;
            }
            if (cfg.algorithm != Algorithm::ValidEod) {
                OracleOptions opts;
                opts.cap = 62;
                opts.deadline = std::chrono::steady_clock::now() + cfg.timeout;
                try {
                    const ValidationOutcome o = naive_validate(r, stmt, opts);
                    row.time_naive_us = to_us(o.diagnostics.elapsed);
                    if (!have_outcome) {
                        row.verdict = o.verdict;
                        row.s_count = o.diagnostics.swap_count;
                        row.m_count = o.diagnostics.merge_count;
                        row.ignored = o.diagnostics.ignored;
                    }
                } catch (const Timeout&) {
                    row.naive_timed_out = true;
                } catch (const CapExceeded&) {
                    row.naive_timed_out = true;
                }
            }
            result.rows.push_back(std::move(row));
        }
    }
    result.aggregates = aggregate_rows(result.rows);
    return result;
}

SweepResult run_sweep(const SweepConfig& cfg) {
    return run_sweep(load_relation_file(cfg.dataset, cfg.load), cfg);
}

std::vector<SweepAggregate> aggregate_rows(const std::vector<SweepRow>& rows) {
    std::vector<SweepAggregate> out;
    std::map<std::size_t, std::size_t> slot;
    struct Sums {
        double valid_eod = 0, naive = 0, s = 0, m = 0;
        std::size_t valid_eod_runs = 0, naive_runs = 0;
    };
    std::vector<Sums> sums;
    for (const auto& row : rows) {
        auto [it, fresh] = slot.emplace(row.size, out.size());
        if (fresh) {
            out.push_back({});
            out.back().size = row.size;
            sums.emplace_back();
        }
        auto& agg = out[it->second];
        auto& sum = sums[it->second];
        ++agg.runs;
        sum.s += static_cast<double>(row.s_count);
        sum.m += static_cast<double>(row.m_count);
        if (row.time_valid_eod_us) {
            sum.valid_eod += *row.time_valid_eod_us;
            ++sum.valid_eod_runs;
        }
        if (row.time_naive_us) {
            sum.naive += *row.time_naive_us;
            ++sum.naive_runs;
        }
        if (row.naive_timed_out) ++agg.naive_timeouts;
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto n = static_cast<double>(out[i].runs);
        out[i].mean_s = sums[i].s / n;
        out[i].mean_m = sums[i].m / n;
        if (sums[i].valid_eod_runs) out[i].mean_time_valid_eod_us = sums[i].valid_eod / static_cast<double>(sums[i].valid_eod_runs);
        if (sums[i].naive_runs) out[i].mean_time_naive_us = sums[i].naive / static_cast<double>(sums[i].naive_runs);
    }
    return out;
}

void write_rows_delimited(std::ostream& out, const std::vector<SweepRow>& rows, char delimiter) {
    const char d = delimiter;
    out << "size" << d << "rep" << d << "side" << d << "verdict" << d << "s_count" << d << "m_count" << d
        << "ignored" << d << "time_validEOD_us" << d << "time_naive_us" << '\n';
    for (const auto& row : rows) {
        out << row.size << d << row.rep << d << side_name(row.side) << d << verdict_token(row.verdict) << d
            << row.s_count << d << row.m_count << d << row.ignored << d;
        if (row.time_valid_eod_us) out << *row.time_valid_eod_us;
        out << d;
        if (row.naive_timed_out) {
            out << "timeout";
        } else if (row.time_naive_us) {
            out << *row.time_naive_us;
        }
        out << '\n';
    }
}

void write_rows_records(std::ostream& out, const std::vector<SweepRow>& rows) {
    for (const auto& row : rows) {
        nlohmann::ordered_json j;
        j["size"] = row.size;
        j["rep"] = row.rep;
        j["side"] = side_name(row.side);
        j["verdict"] = verdict_token(row.verdict);
        j["s_count"] = row.s_count;
        j["m_count"] = row.m_count;
        j["ignored"] = row.ignored;
        j["time_validEOD_us"] = row.time_valid_eod_us ? nlohmann::ordered_json(*row.time_valid_eod_us) : nullptr;
        if (row.naive_timed_out) {
            j["time_naive_us"] = "timeout";
        } else {
            j["time_naive_us"] = row.time_naive_us ? nlohmann::ordered_json(*row.time_naive_us) : nullptr;
        }
        out << j.dump() << '\n';
    }
}

SyntheticData gen_synthetic(const SyntheticConfig& cfg) {
    if (cfg.rows == 0) throw EmptyRelationError();
    if (cfg.attributes < 2) throw ConfigError("synthetic relation needs at least two attributes");
    if (!(cfg.null_rate >= 0.0 && cfg.null_rate < 1.0)) throw ConfigError("null rate must lie in [0, 1)");
    const std::size_t blocks = cfg.rows / 2;
    if (cfg.swap_pairs + cfg.merge_pairs > blocks) {
        throw ConfigError("cannot plant " + std::to_string(cfg.swap_pairs + cfg.merge_pairs) +
                          " disjoint pairs in " + std::to_string(cfg.rows) + " rows");
    }

    std::mt19937_64 rng(cfg.seed);
    const std::size_t n = cfg.rows;

    // Positions are X order; the permutation maps them to tuple ids.
    std::vector<TupleId> tuple_of(n);
    std::iota(tuple_of.begin(), tuple_of.end(), TupleId{0});
    std::shuffle(tuple_of.begin(), tuple_of.end(), rng);

    std::vector<std::size_t> block_ids(blocks);
    std::iota(block_ids.begin(), block_ids.end(), std::size_t{0});
    std::shuffle(block_ids.begin(), block_ids.end(), rng);

    std::vector<std::int64_t> x(n), y(n);
    for (std::size_t p = 0; p < n; ++p) {
        x[p] = static_cast<std::int64_t>(p) * 10;
        y[p] = static_cast<std::int64_t>(p) * 10;
    }
    std::vector<ViolationPair> planted;
    for (std::size_t i = 0; i < cfg.swap_pairs + cfg.merge_pairs; ++i) {
        const std::size_t p = 2 * block_ids[i];
        if (i < cfg.swap_pairs) {
            std::swap(y[p], y[p + 1]);
            planted.push_back(ViolationPair::make(tuple_of[p], tuple_of[p + 1], ViolationKind::Swap));
        } else {
            x[p + 1] = x[p];
            planted.push_back(ViolationPair::make(tuple_of[p], tuple_of[p + 1], ViolationKind::Merge));
        }
    }
    std::sort(planted.begin(), planted.end());

    std::vector<std::string> names;
    for (std::size_t a = 0; a < cfg.attributes; ++a) names.push_back("A" + std::to_string(a + 1));
    std::vector<std::vector<Value>> columns(cfg.attributes, std::vector<Value>(n));
    for (std::size_t p = 0; p < n; ++p) {
        columns[0][tuple_of[p]] = Value::number(x[p]);
        columns[1][tuple_of[p]] = Value::number(y[p]);
    }
    std::bernoulli_distribution is_null(cfg.null_rate);
    for (std::size_t a = 2; a < cfg.attributes; ++a) {
        std::int64_t amplitude = 0;
        for (std::size_t k = 2; k < a; ++k) amplitude = amplitude * 3 + 10;
        std::uniform_int_distribution<std::int64_t> noise(-amplitude, amplitude);
        const bool text = a % 2 == 1;
        for (std::size_t p = 0; p < n; ++p) {
            const std::int64_t v = static_cast<std::int64_t>(p) * 10 + noise(rng);
            Value cell;
            if (text) {
                char buf[32];
                std::snprintf(buf, sizeof buf, "v%012lld", static_cast<long long>(v + 1'000'000'000LL));
                cell = Value::text(buf);
            } else {
                cell = Value::number(v);
            }
            columns[a][tuple_of[p]] = is_null(rng) ? Value::null() : std::move(cell);
        }
    }
    return {Relation(std::move(names), std::move(columns)), std::move(planted)};
}

}  // namespace eod
