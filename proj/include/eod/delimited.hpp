#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace eod {

struct Field {
    std::string text;
    bool quoted = false;
};

struct Record {
    std::vector<Field> fields;
    std::size_t line = 0;  // 1-based physical line where the record starts
};

/// RFC-4180 style reader: quoted fields, doubled quotes, CRLF or LF endings.
/// Blank lines are skipped. A leading UTF-8 byte-order mark is ignored.
/// Throws ParseError on an unterminated quote or stray text after a quote.
std::vector<Record> parse_delimited(std::string_view text, char delimiter = ',');

/// Quotes a field when it contains the delimiter, a quote, CR or LF, or when
/// force is set.
std::string quote_field(std::string_view text, char delimiter, bool force = false);

}  // namespace eod
