#pragma once

#include <stdexcept>
#include <string>

namespace weyllab {

/// A precondition on an argument was violated (out-of-range exponent, empty series, ...).
class InvalidArgument : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// The requested computation exceeds the configured memory or work budget.
class BudgetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A persisted artifact (count-table cache file) failed validation on read.
class CorruptData : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace detail {

[[noreturn]] inline void fail_argument(const std::string& what) { throw InvalidArgument(what); }

inline void require(bool condition, const char* what) {
  if (!condition) {
    throw InvalidArgument(what);
  }
}

}  // namespace detail
}  // namespace weyllab
