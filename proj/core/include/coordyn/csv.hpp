#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace coordyn::csv {

/// Splits one RFC 4180 record. Quoted fields may contain commas and doubled
/// quotes; embedded newlines are not supported.
std::vector<std::string> split_record(std::string_view line, char delim = ',');

/// Quotes a field only when it needs it.
std::string escape(std::string_view field);

/// Shortest round-trip rendering of a double.
std::string number(double value);

/// Header-aware reader. Column lookup is by name so column order in input
/// files is free.
class Reader {
 public:
  explicit Reader(std::istream& in);

  const std::vector<std::string>& header() const { return header_; }
  bool has_column(std::string_view name) const;
  std::size_t column(std::string_view name) const;  // throws InputError when absent

  /// Reads the next non-blank record. Returns false at end of stream.
  bool next(std::vector<std::string>& fields);
  std::size_t line_number() const { return line_; }

 private:
  std::istream& in_;
  std::vector<std::string> header_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t line_ = 0;
};

/// Writes rows joined by commas, escaping as needed.
class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  Writer& row(const std::vector<std::string>& fields);

 private:
  std::ostream& out_;
};

}  // namespace coordyn::csv
