#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "eod/order.hpp"

namespace eod::testing {

struct InstanceShape {
    std::size_t min_attributes = 2;
    std::size_t max_attributes = 7;
    std::size_t min_rows = 1;
    std::size_t max_rows = 64;
    double max_null_rate = 0.4;
    std::int64_t domain = 5;  // distinct values per column, small to force ties
};

struct Instance {
    Relation relation;
    Statement statement;
};

/// Random relation with mixed Number/Text columns and a random statement
/// whose embedding is X ∪ Y plus a random subset of the other attributes.
inline Instance random_instance(std::mt19937_64& rng, const InstanceShape& shape = {}) {
    auto uniform = [&](std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    };
    const std::size_t k = uniform(shape.min_attributes, shape.max_attributes);
    const std::size_t n = uniform(shape.min_rows, shape.max_rows);
    const double null_rate = std::uniform_real_distribution<double>(0.0, shape.max_null_rate)(rng);
    std::bernoulli_distribution is_null(null_rate);
    std::uniform_int_distribution<std::int64_t> val(0, shape.domain - 1);

    std::vector<std::string> names;
    std::vector<std::vector<Value>> columns(k);
    for (std::size_t a = 0; a < k; ++a) {
        names.push_back("c" + std::to_string(a));
        const bool text = std::bernoulli_distribution(0.3)(rng);
        for (std::size_t t = 0; t < n; ++t) {
            if (is_null(rng)) {
                columns[a].push_back(Value::null());
            } else if (text) {
                columns[a].push_back(Value::text(std::string(1, static_cast<char>('a' + val(rng)))));
            } else {
                columns[a].push_back(Value::number(val(rng)));
            }
        }
    }
    Relation r(std::move(names), std::move(columns));

    std::vector<AttrId> ids(k);
    std::iota(ids.begin(), ids.end(), AttrId{0});
    std::shuffle(ids.begin(), ids.end(), rng);
    const std::size_t lhs_size = uniform(1, std::min<std::size_t>(2, k - 1));
    const std::size_t rhs_size = uniform(1, std::min<std::size_t>(2, k - lhs_size));
    Statement stmt;
    stmt.lhs.assign(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(lhs_size));
    stmt.rhs.assign(ids.begin() + static_cast<std::ptrdiff_t>(lhs_size),
                    ids.begin() + static_cast<std::ptrdiff_t>(lhs_size + rhs_size));
    stmt.op = std::bernoulli_distribution(0.5)(rng) ? Operator::Leq : Operator::Lt;
    for (AttrId a : stmt.lhs) stmt.embedding.insert(a);
    for (AttrId a : stmt.rhs) stmt.embedding.insert(a);
    for (std::size_t i = lhs_size + rhs_size; i < k; ++i) {
        if (std::bernoulli_distribution(0.2)(rng)) stmt.embedding.insert(ids[i]);
    }
    return {std::move(r), std::move(stmt)};
}

}  // namespace eod::testing
