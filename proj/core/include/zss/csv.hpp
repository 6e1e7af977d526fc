#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace zss {

struct CsvRow {
  std::size_t line = 0;  // 1-based physical line where the record starts
  std::vector<std::string> fields;
};

/// RFC 4180 reader: comma separated, optional double quotes around a field,
/// doubled quotes inside quoted fields, newlines allowed inside quotes, CRLF
/// or LF record ends. A leading UTF-8 byte order mark is dropped. Throws
/// ParseError for an unterminated quote or stray quote inside an unquoted field.
std::vector<CsvRow> read_csv(std::istream& in, const std::string& source);

/// Quotes `field` only when it holds a comma, quote, CR or LF.
std::string csv_escape(std::string_view field);

}  // namespace zss
