#include "eod/delimited.hpp"

#include "eod/errors.hpp"

namespace eod {

std::vector<Record> parse_delimited(std::string_view text, char delimiter) {
    if (delimiter == '"' || delimiter == '\n' || delimiter == '\r') {
        throw ParseError(0, "invalid delimiter");
    }
    if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

    std::vector<Record> records;
    std::size_t pos = 0;
    std::size_t line = 1;
    const std::size_t n = text.size();

    while (pos < n) {
        Record rec;
        rec.line = line;
        bool end_of_record = false;
        while (!end_of_record) {
            Field field;
            if (pos < n && text[pos] == '"') {
                field.quoted = true;
                ++pos;
                bool closed = false;
                while (pos < n) {
                    char c = text[pos];
                    if (c == '"') {
                        if (pos + 1 < n && text[pos + 1] == '"') {
                            field.text.push_back('"');
                            pos += 2;
                            continue;
                        }
                        ++pos;
                        closed = true;
                        break;
                    }
                    if (c == '\n') ++line;
                    field.text.push_back(c);
                    ++pos;
                }
                if (!closed) throw ParseError(rec.line, "unterminated quoted field");
                if (pos < n && text[pos] != delimiter && text[pos] != '\n' && text[pos] != '\r') {
                    throw ParseError(line, "unexpected character after closing quote");
                }
            } else {
                while (pos < n && text[pos] != delimiter && text[pos] != '\n' && text[pos] != '\r') {
                    field.text.push_back(text[pos]);
                    ++pos;
                }
            }
            rec.fields.push_back(std::move(field));

            if (pos >= n) {
                end_of_record = true;
            } else if (text[pos] == delimiter) {
                ++pos;
            } else {
                if (text[pos] == '\r') ++pos;
                if (pos < n && text[pos] == '\n') ++pos;
                ++line;
                end_of_record = true;
            }
        }
        const bool blank = rec.fields.size() == 1 && !rec.fields[0].quoted && rec.fields[0].text.empty();
        if (!blank) records.push_back(std::move(rec));
    }
    return records;
}

std::string quote_field(std::string_view text, char delimiter, bool force) {
    bool needs = force || text.find_first_of(std::string{delimiter, '"', '\r', '\n'}) != std::string_view::npos;
    if (!needs) return std::string(text);
    std::string out;
    out.reserve(text.size() + 2);
    out.push_back('"');
    for (char c : text) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

}  // namespace eod
