#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "eod/embedding.hpp"
#include "eod/relation.hpp"

namespace eod {

enum class Side { Lhs, Rhs };
enum class Algorithm { ValidEod, Naive, Both };

std::string_view side_name(Side s) noexcept;
std::string_view algorithm_name(Algorithm a) noexcept;

struct SweepConfig {
    std::string dataset;  // used by the path overload of run_sweep
    LoadOptions load;
    Side side = Side::Lhs;
    std::vector<std::size_t> sizes{1};
    std::size_t fixed_size = 1;
    std::size_t repetitions = 10;
    std::uint64_t seed = 1;
    Algorithm algorithm = Algorithm::ValidEod;
    Operator op = Operator::Leq;
    std::chrono::milliseconds timeout{60'000};
};

struct SweepRow {
    std::size_t size = 0;
    std::size_t rep = 0;
    Side side = Side::Lhs;
    AttributeList lhs;
    AttributeList rhs;
    Verdict verdict = Verdict::Valid;
    std::size_t s_count = 0;
    std::size_t m_count = 0;
    std::size_t ignored = 0;
    std::optional<double> time_valid_eod_us;
    std::optional<double> time_naive_us;
    bool naive_timed_out = false;
};

struct SweepAggregate {
    std::size_t size = 0;
    std::size_t runs = 0;
    double mean_time_valid_eod_us = 0;  // over rows that ran validEOD
    double mean_time_naive_us = 0;      // over completed naive rows
    std::size_t naive_timeouts = 0;
    double mean_s = 0;
    double mean_m = 0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::vector<SweepAggregate> aggregates;
};

/// One row per (size, repetition). X and Y are drawn disjoint, uniformly
/// without replacement from all attributes, and E = X ∪ Y. Throws
/// ConfigError when a size cannot be drawn from the schema.
SweepResult run_sweep(const Relation& r, const SweepConfig& cfg);
SweepResult run_sweep(const SweepConfig& cfg);

std::vector<SweepAggregate> aggregate_rows(const std::vector<SweepRow>& rows);

/// Delimited text with the record field names as header.
void write_rows_delimited(std::ostream& out, const std::vector<SweepRow>& rows, char delimiter = ',');
/// One JSON object per line. A naive time is null when not run and the
/// string "timeout" when the deadline passed.
void write_rows_records(std::ostream& out, const std::vector<SweepRow>& rows);

struct SyntheticConfig {
    std::size_t rows = 1000;
    std::size_t attributes = 10;
    double null_rate = 0.1;
    std::size_t swap_pairs = 0;
    std::size_t merge_pairs = 0;
    std::uint64_t seed = 1;
};

struct SyntheticData {
    Relation relation;
    /// Planted pairs, as find_errors reports them for A1 ↦≤ A2.
    std::vector<ViolationPair> planted;
};

/// Attributes A1..Ak. Without plants, A1 ↦≤ A2 holds with distinct values.
/// A swap plant exchanges the A2 values of two X-adjacent tuples; a merge
/// plant gives two X-adjacent tuples the same A1 value (a split on A1, A2).
/// A3..Ak are noisy monotone functions of A1 with growing noise, every other
/// one rendered as text, and carry the nulls (rate null_rate per cell).
/// Throws EmptyRelationError for zero rows and ConfigError for impossible plans.
SyntheticData gen_synthetic(const SyntheticConfig& cfg);

}  // namespace eod
