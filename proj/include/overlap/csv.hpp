#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace overlap::csv {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;  // rows[i][j], aligned to header

  std::size_t cols() const { return header.size(); }
  // Index of a header name, -1 if absent. Throws on duplicates elsewhere.
  int find(const std::string& name) const;
};

// RFC-4180 reader: quoted fields, embedded commas/quotes/newlines, CRLF.
// Header row required; every record must match the header width.
Table read_file(const std::string& path);
Table read_string(const std::string& text, const std::string& path = "<string>");

// Writer; quotes only when needed. Appends CRLF-free '\n' line endings.
void write(std::ostream& os, const Table& table);
void write_file(const std::string& path, const Table& table);

// Formats a double so that reading it back reproduces the value bit-exactly.
std::string format_double(double v);

}  // namespace overlap::csv
