#pragma once

#include <stdexcept>
#include <string>

namespace unforced {

/// Broad failure class; the CLI maps each to a distinct exit code.
enum class ErrorCategory { usage, data, runtime };

class Error : public std::runtime_error {
public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

private:
  ErrorCategory category_;
};

/// Bad input data: missing files, malformed CSV, unknown players, empty pools.
class DataError : public Error {
public:
  explicit DataError(const std::string& what) : Error(ErrorCategory::data, what) {}
};

/// Caller violated a documented precondition.
class UsageError : public Error {
public:
  explicit UsageError(const std::string& what) : Error(ErrorCategory::usage, what) {}
};

}  // namespace unforced
