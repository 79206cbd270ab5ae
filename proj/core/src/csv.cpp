#include "unforced/csv.hpp"

#include <sstream>

namespace unforced::csv {

namespace {

std::string located(const std::string& source, std::size_t line, const std::string& what) {
  std::ostringstream os;
  os << source << ':' << line << ": " << what;
  return os.str();
}

}  // namespace

CsvError::CsvError(std::string source, std::size_t line, const std::string& what)
    : DataError(located(source, line, what)), source_(std::move(source)), line_(line) {}

Reader::Reader(std::istream& in, std::string source_name) : in_(in), source_(std::move(source_name)) {}

bool Reader::next(std::vector<std::string>& fields) {
  std::string line;
  while (true) {
    if (!std::getline(in_, line)) return false;
    ++physical_line_;
    if (first_) {
      first_ = false;
      if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) break;
  }
  record_line_ = physical_line_;

  fields.clear();
  std::string field;
  bool quoted = false;
  bool field_was_quoted = false;
  std::size_t i = 0;
  while (true) {
    if (i >= line.size()) {
      if (!quoted) break;
      // Quoted field spans a line break.
      std::string more;
      if (!std::getline(in_, more)) {
        throw CsvError(source_, record_line_, "unterminated quoted field");
      }
      ++physical_line_;
      if (!more.empty() && more.back() == '\r') more.pop_back();
      field.push_back('\n');
      line = std::move(more);
      i = 0;
      continue;
    }
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
      if (!field.empty() || field_was_quoted) {
        throw CsvError(source_, physical_line_, "quote inside unquoted field");
      }
      quoted = true;
      field_was_quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
      field_was_quoted = false;
    } else {
      if (field_was_quoted) throw CsvError(source_, physical_line_, "text after closing quote");
      field.push_back(c);
    }
    ++i;
  }
  fields.push_back(std::move(field));
  return true;
}

Header::Header(std::vector<std::string> names) : names_(std::move(names)) {}

std::optional<std::size_t> Header::find(std::string_view name) const noexcept {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t Header::require(std::string_view name, std::string_view source) const {
  if (auto idx = find(name)) return *idx;
  throw DataError(std::string(source) + ": header is missing required column \"" + std::string(name) + "\"");
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
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

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << escape(fields[i]);
  }
  out << '\n';
}

}  // namespace unforced::csv
