#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace vaxwatch::core {

/// RFC 4180-style CSV row reader. Handles quoted fields, embedded commas,
/// doubled quotes and newlines inside quotes; tolerates CRLF endings.
class CsvReader {
  public:
    explicit CsvReader(std::istream& in) : in_(in) {}

    /// Reads the next row into `row`. Returns false at end of input.
    bool next(std::vector<std::string>& row);

  private:
    std::istream& in_;
};

std::string csv_escape(std::string_view field);

/// Formats one row, escaping as needed. No trailing newline.
std::string csv_row(std::span<const std::string> fields);

void write_csv_row(std::ostream& out, std::span<const std::string> fields);

}  // namespace vaxwatch::core
