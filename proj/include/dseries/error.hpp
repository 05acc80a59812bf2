#pragma once

#include <stdexcept>
#include <string>

namespace dseries {

enum class ErrorKind {
  InvalidArgument,
  ResourceLimit,
  Pole,
  UnsupportedRange,
  NearSingularity,
  Domain,
  Unsupported,
  Configuration,
  Numeric,
  Fitting,
  InsufficientPrecision,
  Ingestion,
};

const char* to_string(ErrorKind kind) noexcept;

/// Validation errors map to CLI exit status 1, numeric failures to 2.
constexpr bool is_numeric_failure(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Pole:
    case ErrorKind::NearSingularity:
    case ErrorKind::Numeric:
    case ErrorKind::Fitting:
    case ErrorKind::InsufficientPrecision:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace dseries
