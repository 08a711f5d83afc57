#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "eod/execution.hpp"
#include "eod/value.hpp"

namespace eod {

using AttrId = std::size_t;
using TupleId = std::size_t;

/// Ordered, duplicate-free attribute list (the X and Y of a statement).
using AttributeList = std::vector<AttrId>;

/// Sorted set of attribute ids. Used for embeddings.
class AttributeSet {
public:
    AttributeSet() = default;
    AttributeSet(std::initializer_list<AttrId> ids);
    explicit AttributeSet(std::span<const AttrId> ids);

    bool contains(AttrId a) const noexcept;
    /// Returns true when a was not already present.
    bool insert(AttrId a);
    AttributeSet with(AttrId a) const;
    bool includes(const AttributeSet& other) const noexcept;
    bool includes(std::span<const AttrId> ids) const noexcept;

    std::size_t size() const noexcept { return ids_.size(); }
    bool empty() const noexcept { return ids_.empty(); }
    auto begin() const noexcept { return ids_.begin(); }
    auto end() const noexcept { return ids_.end(); }
    const std::vector<AttrId>& ids() const noexcept { return ids_; }

    friend bool operator==(const AttributeSet&, const AttributeSet&) = default;
    friend auto operator<=>(const AttributeSet& a, const AttributeSet& b) { return a.ids_ <=> b.ids_; }

private:
    std::vector<AttrId> ids_;
};

using Embedding = AttributeSet;

struct Attribute {
    std::string name;
    Kind kind = Kind::Text;

    friend bool operator==(const Attribute&, const Attribute&) = default;
};

/// Immutable column-oriented table. Tuple ids are 0-based row positions.
///
/// Besides the values, every column carries a dense order rank per cell
/// (-1 for Null): equal values share a rank and rank order is value order.
/// All comparisons in the order module run on these ranks.
class Relation {
public:
    /// Builds a relation from columns of values. Column kinds are taken from
    /// the non-null values (all-null columns become Text). Throws SchemaError
    /// on duplicate names, ragged columns, or a column mixing Number and Text.
    Relation(std::vector<std::string> names, std::vector<std::vector<Value>> columns);

    std::size_t num_rows() const noexcept { return num_rows_; }
    std::size_t num_attributes() const noexcept { return attributes_.size(); }

    const Attribute& attribute(AttrId a) const { return attributes_.at(a); }
    const std::vector<Attribute>& attributes() const noexcept { return attributes_; }
    std::optional<AttrId> find(std::string_view name) const;

    const Value& value(TupleId t, AttrId a) const { return columns_[a][t]; }
    const std::vector<Value>& column(AttrId a) const { return columns_.at(a); }
    std::int32_t rank(TupleId t, AttrId a) const noexcept { return ranks_[a][t]; }
    std::span<const std::int32_t> ranks(AttrId a) const { return ranks_.at(a); }
    bool is_null(TupleId t, AttrId a) const noexcept { return ranks_[a][t] < 0; }

    friend bool operator==(const Relation& a, const Relation& b) {
        return a.attributes_ == b.attributes_ && a.columns_ == b.columns_;
    }

private:
    std::vector<Attribute> attributes_;
    std::vector<std::vector<Value>> columns_;
    std::vector<std::vector<std::int32_t>> ranks_;
    std::unordered_map<std::string, AttrId> by_name_;
    std::size_t num_rows_ = 0;
};

/// Null tokens used when none are configured.
std::set<std::string> default_null_tokens();

struct LoadOptions {
    char delimiter = ',';
    std::set<std::string> null_tokens = default_null_tokens();
    /// When false, attributes are named "1", "2", ... in column order.
    bool header = true;
};

/// Column kind inference on raw (non-null) cells: Number iff every cell
/// parses as a decimal, otherwise Text. An empty column is Text.
Kind infer_column_kind(std::span<const std::string> cells);
std::vector<Kind> infer_column_kinds(const std::vector<std::vector<std::string>>& columns);

Relation load_relation(std::string_view text, const LoadOptions& options = {});
Relation load_relation(std::istream& in, const LoadOptions& options = {});
Relation load_relation_file(const std::string& path, const LoadOptions& options = {});

struct WriteOptions {
    char delimiter = ',';
    std::string null_token = "NULL";
    bool header = true;
};

void write_relation(std::ostream& out, const Relation& r, const WriteOptions& options = {});

/// Per-attribute sets of tuple ids holding Null, plus N (attributes that
/// have at least one Null) in schema order.
class MissingIndex {
public:
    MissingIndex() = default;

    std::span<const TupleId> missing(AttrId a) const { return missing_.at(a); }
    bool is_missing(AttrId a, TupleId t) const noexcept { return masks_[a][t] != 0; }
    const std::vector<AttrId>& attributes_with_missing() const noexcept { return with_missing_; }
    std::size_t num_rows() const noexcept { return num_rows_; }
    std::size_t num_attributes() const noexcept { return missing_.size(); }
    std::size_t total_missing() const noexcept;

private:
    friend MissingIndex build_missing_index(const Relation& r);

    std::vector<std::vector<TupleId>> missing_;
    std::vector<std::vector<std::uint8_t>> masks_;
    std::vector<AttrId> with_missing_;
    std::size_t num_rows_ = 0;
};

MissingIndex build_missing_index(const Relation& r);

/// True iff the tuple has no Null on any attribute of the embedding.
bool present_in(const MissingIndex& idx, const Embedding& e, TupleId t);

/// Membership mask of the sub-relation r^E (1 = present).
std::vector<std::uint8_t> presence_mask(const MissingIndex& idx, const Embedding& e,
                                        Execution exec = Execution::Serial);

/// Tuple ids of r^E in ascending order.
std::vector<TupleId> complete_tuples(const MissingIndex& idx, const Embedding& e);

}  // namespace eod
