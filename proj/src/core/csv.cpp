#include "vaxwatch/core/csv.hpp"

#include <istream>
#include <ostream>

namespace vaxwatch::core {

bool CsvReader::next(std::vector<std::string>& row) {
    row.clear();
    int c = in_.get();
    if (c == std::istream::traits_type::eof()) return false;

    std::string field;
    bool in_quotes = false;
    bool any = false;

    while (true) {
        if (c == std::istream::traits_type::eof()) {
            row.push_back(std::move(field));
            return true;
        }
        any = true;
        char ch = static_cast<char>(c);
        if (in_quotes) {
            if (ch == '"') {
                int peek = in_.peek();
                if (peek == '"') {
                    field.push_back('"');
                    in_.get();
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(ch);
            }
        } else if (ch == '"' && field.empty()) {
            in_quotes = true;
        } else if (ch == ',') {
            row.push_back(std::move(field));
            field.clear();
        } else if (ch == '\n') {
            row.push_back(std::move(field));
            return true;
        } else if (ch == '\r') {
            if (in_.peek() == '\n') in_.get();
            row.push_back(std::move(field));
            return true;
        } else {
            field.push_back(ch);
        }
        c = in_.get();
    }
    (void)any;
}

std::string csv_escape(std::string_view field) {
    bool needs_quotes = field.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!needs_quotes) return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string csv_row(std::span<const std::string> fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out.push_back(',');
        out += csv_escape(fields[i]);
    }
    return out;
}

void write_csv_row(std::ostream& out, std::span<const std::string> fields) {
    out << csv_row(fields) << '\n';
}

}  // namespace vaxwatch::core
