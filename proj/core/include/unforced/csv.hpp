#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "unforced/error.hpp"

namespace unforced::csv {

/// Structural CSV failure (unterminated quote, wrong field count).
class CsvError : public DataError {
public:
  CsvError(std::string source, std::size_t line, const std::string& what);

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

private:
  std::string source_;
  std::size_t line_;
};

/// RFC 4180 reader: comma separated, double-quote escaping, embedded newlines
/// inside quotes, LF or CRLF line ends, optional UTF-8 BOM.
class Reader {
public:
  Reader(std::istream& in, std::string source_name);

  /// Reads the next record; false at end of input. Blank lines are skipped.
  bool next(std::vector<std::string>& fields);

  /// Physical line (1-based) on which the last returned record started.
  std::size_t line() const noexcept { return record_line_; }
  const std::string& source() const noexcept { return source_; }

private:
  std::istream& in_;
  std::string source_;
  std::size_t physical_line_ = 0;
  std::size_t record_line_ = 0;
  bool first_ = true;
};

/// Header lookup that reports missing required columns by name.
class Header {
public:
  Header() = default;
  explicit Header(std::vector<std::string> names);

  std::optional<std::size_t> find(std::string_view name) const noexcept;
  /// Throws DataError naming the column when absent.
  std::size_t require(std::string_view name, std::string_view source) const;
  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }

private:
  std::vector<std::string> names_;
};

/// Quote a field when it contains a separator, quote or line break.
std::string escape(std::string_view field);

void write_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace unforced::csv
