#include "eod/value.hpp"

#include <cctype>

#include "eod/errors.hpp"

namespace eod {

namespace {

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_blank(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_blank(s.back())) s.remove_suffix(1);
    return s;
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Exponents beyond this are treated as non-numeric text.
constexpr std::size_t kMaxExponentDigits = 9;

}  // namespace

std::optional<Decimal> Decimal::parse(std::string_view text) {
    std::string_view s = trim(text);
    std::size_t i = 0;
    bool negative = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        negative = s[i] == '-';
        ++i;
    }
    std::size_t int_begin = i;
    while (i < s.size() && is_digit(s[i])) ++i;
    std::string_view int_part = s.substr(int_begin, i - int_begin);
    std::string_view frac_part;
    if (i < s.size() && s[i] == '.') {
        ++i;
        std::size_t frac_begin = i;
        while (i < s.size() && is_digit(s[i])) ++i;
        frac_part = s.substr(frac_begin, i - frac_begin);
    }
    if (int_part.empty() && frac_part.empty()) return std::nullopt;

    std::int64_t exp10 = 0;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        bool exp_negative = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            exp_negative = s[i] == '-';
            ++i;
        }
        std::size_t exp_begin = i;
        while (i < s.size() && is_digit(s[i])) ++i;
        std::size_t exp_len = i - exp_begin;
        if (exp_len == 0 || exp_len > kMaxExponentDigits) return std::nullopt;
        for (std::size_t k = exp_begin; k < i; ++k) exp10 = exp10 * 10 + (s[k] - '0');
        if (exp_negative) exp10 = -exp10;
    }
    if (i != s.size()) return std::nullopt;

    std::string digits;
    digits.reserve(int_part.size() + frac_part.size());
    digits.append(int_part);
    digits.append(frac_part);
    std::int64_t exponent = static_cast<std::int64_t>(int_part.size()) + exp10;

    std::size_t lead = 0;
    while (lead < digits.size() && digits[lead] == '0') ++lead;
    digits.erase(0, lead);
    exponent -= static_cast<std::int64_t>(lead);
    while (!digits.empty() && digits.back() == '0') digits.pop_back();

    Decimal d;
    if (digits.empty()) return d;
    d.negative_ = negative;
    d.digits_ = std::move(digits);
    d.exponent_ = exponent;
    return d;
}

Decimal Decimal::from_integer(std::int64_t v) {
    return *parse(std::to_string(v));
}

std::string Decimal::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    if (negative_) out.push_back('-');
    const auto len = static_cast<std::int64_t>(digits_.size());
    constexpr std::int64_t kPlainRange = 40;
    if (exponent_ > kPlainRange || exponent_ < -kPlainRange) {
        out.push_back(digits_[0]);
        if (len > 1) {
            out.push_back('.');
            out.append(digits_, 1);
        }
        out.push_back('e');
        out.append(std::to_string(exponent_ - 1));
    } else if (exponent_ <= 0) {
        out.append("0.");
        out.append(static_cast<std::size_t>(-exponent_), '0');
        out.append(digits_);
    } else if (exponent_ >= len) {
        out.append(digits_);
        out.append(static_cast<std::size_t>(exponent_ - len), '0');
    } else {
        out.append(digits_, 0, static_cast<std::size_t>(exponent_));
        out.push_back('.');
        out.append(digits_, static_cast<std::size_t>(exponent_));
    }
    return out;
}

std::strong_ordering operator<=>(const Decimal& a, const Decimal& b) {
    auto signum = [](const Decimal& d) { return d.is_zero() ? 0 : (d.negative_ ? -1 : 1); };
    const int sa = signum(a);
    const int sb = signum(b);
    if (sa != sb) return sa <=> sb;
    if (sa == 0) return std::strong_ordering::equal;

    std::strong_ordering magnitude = a.exponent_ <=> b.exponent_;
    if (magnitude == 0) {
        const int c = a.digits_.compare(b.digits_);
        magnitude = c <=> 0;
    }
    if (sa < 0) return 0 <=> magnitude;
    return magnitude;
}

std::string_view kind_name(Kind k) noexcept {
    return k == Kind::Number ? "number" : "text";
}

std::string Value::to_string(std::string_view null_token) const {
    if (is_null()) return std::string(null_token);
    if (is_number()) return as_number().to_string();
    return as_text();
}

std::strong_ordering compare_values(const Value& a, const Value& b) {
    if (a.is_null() || b.is_null()) {
        throw ContractViolation("ordering requested on a Null value");
    }
    if (a.is_number() && b.is_number()) return a.as_number() <=> b.as_number();
    if (a.is_text() && b.is_text()) {
        const int c = a.as_text().compare(b.as_text());
        return c <=> 0;
    }
    throw ContractViolation("ordering requested between Number and Text");
}

}  // namespace eod
