#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace confront::csv {

/// One parsed CSV record, with the 1-based line number it started on.
struct Row {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

/// RFC 4180 reader: quoted fields may contain separators, doubled quotes and
/// newlines. A UTF-8 byte-order mark on the first line is skipped.
class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  /// Returns false at end of input.
  bool next(Row& row);

 private:
  std::istream& in_;
  std::size_t line_ = 0;
  bool first_ = true;
};

/// Header-driven access: resolves required column names once, then reads
/// fields by name. Throws MalformedRecord on a missing column.
class Table {
 public:
  Table(std::istream& in, std::string source_name, const std::vector<std::string_view>& required);

  bool next();
  const std::string& get(std::string_view column) const;
  std::size_t line() const { return row_.line; }
  const std::string& source() const { return source_; }

 private:
  Reader reader_;
  std::string source_;
  std::vector<std::string> header_;
  Row row_;
};

std::string escape(std::string_view field);
void write_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace confront::csv
