#include "eod/relation.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <iterator>
#include <numeric>
#include <ostream>
#include <sstream>

#include "eod/delimited.hpp"
#include "eod/errors.hpp"

namespace eod {

AttributeSet::AttributeSet(std::initializer_list<AttrId> ids) : ids_(ids) {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

AttributeSet::AttributeSet(std::span<const AttrId> ids) : ids_(ids.begin(), ids.end()) {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

bool AttributeSet::contains(AttrId a) const noexcept {
    return std::binary_search(ids_.begin(), ids_.end(), a);
}

bool AttributeSet::insert(AttrId a) {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), a);
    if (it != ids_.end() && *it == a) return false;
    ids_.insert(it, a);
    return true;
}

AttributeSet AttributeSet::with(AttrId a) const {
    AttributeSet out = *this;
    out.insert(a);
    return out;
}

bool AttributeSet::includes(const AttributeSet& other) const noexcept {
    return std::includes(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end());
}

bool AttributeSet::includes(std::span<const AttrId> ids) const noexcept {
    return std::all_of(ids.begin(), ids.end(), [this](AttrId a) { return contains(a); });
}

namespace {

std::string_view trim(std::string_view s) {
    auto blank = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && blank(s.front())) s.remove_prefix(1);
    while (!s.empty() && blank(s.back())) s.remove_suffix(1);
    return s;
}

Kind kind_of_column(const std::vector<Value>& column, const std::string& name) {
    bool any_number = false;
    bool any_text = false;
    for (const Value& v : column) {
        any_number |= v.is_number();
        any_text |= v.is_text();
    }
    if (any_number && any_text) {
        throw SchemaError("column '" + name + "' mixes numbers and text");
    }
    return any_number ? Kind::Number : Kind::Text;
}

std::vector<std::int32_t> dense_ranks(const std::vector<Value>& column) {
    std::vector<std::int32_t> ranks(column.size(), -1);
    std::vector<TupleId> order;
    order.reserve(column.size());
    for (TupleId t = 0; t < column.size(); ++t) {
        if (!column[t].is_null()) order.push_back(t);
    }
    std::sort(order.begin(), order.end(), [&](TupleId a, TupleId b) {
        return compare_values(column[a], column[b]) < 0;
    });
    std::int32_t next = -1;
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (i == 0 || compare_values(column[order[i - 1]], column[order[i]]) != 0) ++next;
        ranks[order[i]] = next;
    }
    return ranks;
}

}  // namespace

Relation::Relation(std::vector<std::string> names, std::vector<std::vector<Value>> columns) {
    if (names.size() != columns.size()) {
        throw SchemaError("attribute count does not match column count");
    }
    num_rows_ = columns.empty() ? 0 : columns.front().size();
    attributes_.reserve(names.size());
    for (AttrId a = 0; a < names.size(); ++a) {
        if (columns[a].size() != num_rows_) {
            throw SchemaError("column '" + names[a] + "' has a different row count");
        }
        if (!by_name_.emplace(names[a], a).second) {
            throw SchemaError("duplicate attribute name '" + names[a] + "'");
        }
        attributes_.push_back({names[a], kind_of_column(columns[a], names[a])});
    }
    columns_ = std::move(columns);
    ranks_.reserve(columns_.size());
    for (const auto& col : columns_) ranks_.push_back(dense_ranks(col));
}

std::optional<AttrId> Relation::find(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

std::set<std::string> default_null_tokens() {
    return {"", "?", "NULL", "\xE2\x8A\xA5"};  // last one is U+22A5 (⊥)
}

Kind infer_column_kind(std::span<const std::string> cells) {
    if (cells.empty()) return Kind::Text;
    for (const auto& c : cells) {
        if (!Decimal::parse(c)) return Kind::Text;
    }
    return Kind::Number;
}

std::vector<Kind> infer_column_kinds(const std::vector<std::vector<std::string>>& columns) {
    std::vector<Kind> kinds;
    kinds.reserve(columns.size());
    for (const auto& col : columns) kinds.push_back(infer_column_kind(col));
    return kinds;
}

Relation load_relation(std::string_view text, const LoadOptions& options) {
    std::vector<Record> records = parse_delimited(text, options.delimiter);
    if (records.empty()) throw EmptyRelationError();

    std::vector<std::string> names;
    std::size_t first_data = 0;
    const std::size_t width = records.front().fields.size();
    if (options.header) {
        for (auto& f : records.front().fields) names.emplace_back(trim(f.text));
        first_data = 1;
    } else {
        for (std::size_t i = 0; i < width; ++i) names.push_back(std::to_string(i + 1));
    }
    {
        std::set<std::string> seen;
        for (const auto& n : names) {
            if (!seen.insert(n).second) throw SchemaError("duplicate attribute name '" + n + "'");
        }
    }
    if (records.size() == first_data) throw EmptyRelationError();

    const std::size_t rows = records.size() - first_data;
    // Raw cells per column; nullopt marks a null token.
    std::vector<std::vector<std::optional<std::string>>> raw(width);
    for (auto& col : raw) col.reserve(rows);
    for (std::size_t r = first_data; r < records.size(); ++r) {
        auto& rec = records[r];
        if (rec.fields.size() != width) {
            throw ParseError(rec.line, "expected " + std::to_string(width) + " fields, found " +
                                           std::to_string(rec.fields.size()));
        }
        for (std::size_t c = 0; c < width; ++c) {
            std::string& cell = rec.fields[c].text;
            if (options.null_tokens.contains(std::string(trim(cell)))) {
                raw[c].emplace_back(std::nullopt);
            } else {
                raw[c].emplace_back(std::move(cell));
            }
        }
    }

    std::vector<std::vector<Value>> columns(width);
    for (std::size_t c = 0; c < width; ++c) {
        std::vector<std::string> present;
        for (const auto& cell : raw[c]) {
            if (cell) present.push_back(*cell);
        }
        const Kind kind = infer_column_kind(present);
        auto& out = columns[c];
        out.reserve(rows);
        for (auto& cell : raw[c]) {
            if (!cell) {
                out.emplace_back();
            } else if (kind == Kind::Number) {
                out.emplace_back(*Decimal::parse(*cell));
            } else {
                out.emplace_back(std::move(*cell));
            }
        }
    }
    return Relation(std::move(names), std::move(columns));
}

Relation load_relation(std::istream& in, const LoadOptions& options) {
    std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return load_relation(std::string_view(text), options);
}

Relation load_relation_file(const std::string& path, const LoadOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    return load_relation(in, options);
}

void write_relation(std::ostream& out, const Relation& r, const WriteOptions& options) {
    const char d = options.delimiter;
    if (options.header) {
        for (AttrId a = 0; a < r.num_attributes(); ++a) {
            if (a) out << d;
            out << quote_field(r.attribute(a).name, d);
        }
        out << '\n';
    }
    for (TupleId t = 0; t < r.num_rows(); ++t) {
        for (AttrId a = 0; a < r.num_attributes(); ++a) {
            if (a) out << d;
            const Value& v = r.value(t, a);
            if (v.is_null()) {
                out << quote_field(options.null_token, d);
            } else {
                // An empty text cell is quoted so it cannot be confused with a blank line.
                const std::string s = v.to_string();
                out << quote_field(s, d, v.is_text() && s.empty());
            }
        }
        out << '\n';
    }
}

std::size_t MissingIndex::total_missing() const noexcept {
    std::size_t total = 0;
    for (const auto& m : missing_) total += m.size();
    return total;
}

MissingIndex build_missing_index(const Relation& r) {
    MissingIndex idx;
    idx.num_rows_ = r.num_rows();
    idx.missing_.resize(r.num_attributes());
    idx.masks_.resize(r.num_attributes());
    for (AttrId a = 0; a < r.num_attributes(); ++a) {
        auto& mask = idx.masks_[a];
        mask.assign(r.num_rows(), 0);
        for (TupleId t = 0; t < r.num_rows(); ++t) {
            if (r.is_null(t, a)) {
                mask[t] = 1;
                idx.missing_[a].push_back(t);
            }
        }
        if (!idx.missing_[a].empty()) idx.with_missing_.push_back(a);
    }
    return idx;
}

bool present_in(const MissingIndex& idx, const Embedding& e, TupleId t) {
    for (AttrId a : e) {
        if (idx.is_missing(a, t)) return false;
    }
    return true;
}

std::vector<std::uint8_t> presence_mask(const MissingIndex& idx, const Embedding& e, Execution exec) {
    const std::size_t n = idx.num_rows();
    std::vector<std::uint8_t> mask(n, 1);
    // Only attributes that actually hold nulls can knock tuples out.
    std::vector<AttrId> relevant;
    for (AttrId a : e) {
        if (!idx.missing(a).empty()) relevant.push_back(a);
    }
    if (relevant.empty()) return mask;

    if (exec == Execution::Serial) {
        for (AttrId a : relevant) {
            for (TupleId t : idx.missing(a)) mask[t] = 0;
        }
        return mask;
    }

    // A missing list holds distinct tuples, so its entries can be cleared concurrently.
#pragma omp parallel
    for (AttrId a : relevant) {
        const auto& missing = idx.missing(a);
        const auto count = static_cast<std::ptrdiff_t>(missing.size());
#pragma omp for schedule(static)
        for (std::ptrdiff_t i = 0; i < count; ++i) mask[missing[static_cast<std::size_t>(i)]] = 0;
    }
    return mask;
}

std::vector<TupleId> complete_tuples(const MissingIndex& idx, const Embedding& e) {
    const auto mask = presence_mask(idx, e);
    std::vector<TupleId> ids;
    ids.reserve(mask.size());
    for (TupleId t = 0; t < mask.size(); ++t) {
        if (mask[t]) ids.push_back(t);
    }
    return ids;
}

}  // namespace eod
