#include "confront/csv.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include "confront/error.hpp"

namespace confront::csv {

bool Reader::next(Row& row) {
  row.fields.clear();
  std::string field;
  bool in_quotes = false;
  bool any = false;
  int c = 0;
  while ((c = in_.get()) != std::char_traits<char>::eof()) {
    if (!any) {
      ++line_;
      row.line = line_;
      any = true;
    }
    const char ch = static_cast<char>(c);
    if (in_quotes) {
      if (ch == '"') {
        if (in_.peek() == '"') {
          in_.get();
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        if (ch == '\n') ++line_;
        field.push_back(ch);
      }
      continue;
    }
    if (ch == '"') {
      in_quotes = true;
    } else if (ch == ',') {
      row.fields.push_back(std::move(field));
      field.clear();
    } else if (ch == '\r') {
      // CRLF line endings
    } else if (ch == '\n') {
      break;
    } else {
      field.push_back(ch);
    }
  }
  if (!any) return false;
  if (in_quotes) {
    throw Error(ErrorCode::MalformedRecord,
                "unterminated quoted field starting at line " + std::to_string(row.line));
  }
  row.fields.push_back(std::move(field));
  if (first_) {
    first_ = false;
    auto& f = row.fields.front();
    if (f.size() >= 3 && f.compare(0, 3, "\xEF\xBB\xBF") == 0) f.erase(0, 3);
  }
  return true;
}

Table::Table(std::istream& in, std::string source_name,
             const std::vector<std::string_view>& required)
    : reader_(in), source_(std::move(source_name)) {
  Row header;
  if (!reader_.next(header)) {
    throw Error(ErrorCode::MalformedRecord, source_ + ": missing header line");
  }
  header_ = std::move(header.fields);
  for (auto column : required) {
    if (std::find(header_.begin(), header_.end(), column) == header_.end()) {
      throw Error(ErrorCode::MalformedRecord,
                  source_ + ": header lacks column '" + std::string(column) + "'");
    }
  }
}

bool Table::next() {
  while (reader_.next(row_)) {
    // blank lines are tolerated
    if (row_.fields.size() == 1 && row_.fields.front().empty()) continue;
    if (row_.fields.size() != header_.size()) {
      throw Error(ErrorCode::MalformedRecord,
                  source_ + " line " + std::to_string(row_.line) + ": expected " +
                      std::to_string(header_.size()) + " fields, got " +
                      std::to_string(row_.fields.size()));
    }
    return true;
  }
  return false;
}

const std::string& Table::get(std::string_view column) const {
  const auto it = std::find(header_.begin(), header_.end(), column);
  if (it == header_.end()) {
    throw Error(ErrorCode::MalformedRecord,
                source_ + ": header lacks column '" + std::string(column) + "'");
  }
  return row_.fields[static_cast<std::size_t>(it - header_.begin())];
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << escape(fields[i]);
  }
  out << '\n';
}

}  // namespace confront::csv
