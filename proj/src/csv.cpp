#include "stpaprio/csv.hpp"

#include <fmt/format.h>

#include "stpaprio/error.hpp"

namespace stpaprio::csv {

std::vector<Record> read(std::istream& in, char delimiter) {
  std::vector<Record> records;
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (text.size() >= 3 && text.compare(0, 3, "\xEF\xBB\xBF") == 0) text.erase(0, 3);

  std::size_t line = 1;
  Record current{line, {}};
  std::string field;
  bool in_quotes = false;
  bool field_quoted = false;
  bool row_has_content = false;

  auto end_field = [&] {
    current.fields.push_back(std::move(field));
    field.clear();
    field_quoted = false;
  };
  auto end_record = [&] {
    end_field();
    if (row_has_content) records.push_back(std::move(current));
    current = Record{line, {}};
    row_has_content = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    if (c == '"' && field.empty() && !field_quoted) {
      in_quotes = true;
      field_quoted = true;
      row_has_content = true;
    } else if (c == delimiter) {
      end_field();
      row_has_content = true;
    } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
      continue;
    } else if (c == '\n') {
      ++line;
      end_record();
    } else {
      field.push_back(c);
      row_has_content = true;
    }
  }
  if (in_quotes) {
    throw Error(ErrorCode::ParseError, fmt::format("{}: unterminated quoted field", current.line));
  }
  end_record();
  return records;
}

std::string escape(std::string_view field, char delimiter) {
  if (field.find_first_of(std::string{delimiter, '"', '\n', '\r'}) == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string join_row(const std::vector<std::string>& fields, char delimiter) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.push_back(delimiter);
    out += escape(fields[i], delimiter);
  }
  return out;
}

}  // namespace stpaprio::csv
