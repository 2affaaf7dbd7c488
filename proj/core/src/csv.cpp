#include "coordyn/csv.hpp"

#include <istream>
#include <ostream>

#include <fmt/format.h>

#include "coordyn/error.hpp"

namespace coordyn::csv {

std::vector<std::string> split_record(std::string_view line, char delim) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == delim) {
      out.push_back(std::move(field));
      field.clear();
    } else if (c != '\r') {
      field.push_back(c);
    }
  }
  if (quoted) throw InputError("unterminated quoted CSV field");
  out.push_back(std::move(field));
  return out;
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

std::string number(double value) { return fmt::format("{}", value); }

Reader::Reader(std::istream& in) : in_(in) {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    header_ = split_record(line);
    break;
  }
  if (header_.empty()) throw InputError("CSV input has no header row");
  for (std::size_t i = 0; i < header_.size(); ++i) index_.emplace(header_[i], i);
}

bool Reader::has_column(std::string_view name) const { return index_.count(std::string(name)) > 0; }

std::size_t Reader::column(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) throw InputError(fmt::format("CSV input lacks column '{}'", name));
  return it->second;
}

bool Reader::next(std::vector<std::string>& fields) {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    fields = split_record(line);
    return true;
  }
  return false;
}

Writer& Writer::row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    out_ << escape(fields[i]);
  }
  out_ << '\n';
  return *this;
}

}  // namespace coordyn::csv
