#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace eod {

/// Exact decimal number. Stored as sign, significant digits and the decimal
/// exponent of the leading digit, so 12.5 is {+, "125", 2} and 0.05 is
/// {+, "5", -1}. Zero has no digits and is never negative.
class Decimal {
public:
    Decimal() = default;

    /// Parses [+-]? (d+ (. d*)? | . d+) ([eE] [+-]? d+)? after trimming blanks.
    static std::optional<Decimal> parse(std::string_view text);
    static Decimal from_integer(std::int64_t v);

    bool is_zero() const noexcept { return digits_.empty(); }
    bool negative() const noexcept { return negative_; }

    /// Canonical text; parse(to_string()) reproduces the same value.
    std::string to_string() const;

    friend bool operator==(const Decimal&, const Decimal&) = default;
    friend std::strong_ordering operator<=>(const Decimal& a, const Decimal& b);

private:
    bool negative_ = false;
    std::string digits_;
    std::int64_t exponent_ = 0;
};

enum class Kind { Number, Text };

std::string_view kind_name(Kind k) noexcept;

/// A cell: Null (missing), an exact Number, or Text.
class Value {
public:
    Value() = default;
    explicit Value(Decimal d) : v_(std::move(d)) {}
    explicit Value(std::string s) : v_(std::move(s)) {}

    static Value null() { return Value(); }
    static Value number(std::int64_t v) { return Value(Decimal::from_integer(v)); }
    static Value text(std::string s) { return Value(std::move(s)); }

    bool is_null() const noexcept { return std::holds_alternative<std::monostate>(v_); }
    bool is_number() const noexcept { return std::holds_alternative<Decimal>(v_); }
    bool is_text() const noexcept { return std::holds_alternative<std::string>(v_); }

    const Decimal& as_number() const { return std::get<Decimal>(v_); }
    const std::string& as_text() const { return std::get<std::string>(v_); }

    /// Rendering for reports; Null renders as the given token.
    std::string to_string(std::string_view null_token = "NULL") const;

    friend bool operator==(const Value&, const Value&) = default;

private:
    std::variant<std::monostate, Decimal, std::string> v_;
};

/// Total order within one kind: numeric for Number, bytewise for Text.
/// Throws ContractViolation when either side is Null or the kinds differ.
std::strong_ordering compare_values(const Value& a, const Value& b);

}  // namespace eod
