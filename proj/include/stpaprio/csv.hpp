#pragma once

// Minimal RFC 4180 delimited-table reading and writing.

#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace stpaprio::csv {

struct Record {
  std::size_t line = 0;  // 1-based line where the record starts
  std::vector<std::string> fields;
};

// Quoted fields may contain delimiters, doubled quotes and newlines.
// Throws ParseError on an unterminated quote. Blank lines are skipped.
std::vector<Record> read(std::istream& in, char delimiter = ',');

std::string escape(std::string_view field, char delimiter = ',');
std::string join_row(const std::vector<std::string>& fields, char delimiter = ',');

}  // namespace stpaprio::csv
