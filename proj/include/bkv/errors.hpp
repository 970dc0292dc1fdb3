#pragma once

#include <stdexcept>
#include <string>

namespace bkv {

// Error taxonomy shared by the library and the CLI. Each class maps to a
// stable process exit code (see exit_code) so scripted callers can dispatch
// on failures.
enum class ErrorClass {
  invalid_argument,
  precision_exceeded,
  parse_error,
  ramanujan_violation,
  construction_failure,
  io_error,
};

constexpr const char* to_string(ErrorClass c) {
  switch (c) {
    case ErrorClass::invalid_argument: return "invalid-argument";
    case ErrorClass::precision_exceeded: return "precision-exceeded";
    case ErrorClass::parse_error: return "parse-error";
    case ErrorClass::ramanujan_violation: return "ramanujan-violation";
    case ErrorClass::construction_failure: return "construction-failure";
    case ErrorClass::io_error: return "io-error";
  }
  return "unknown";
}

constexpr int exit_code(ErrorClass c) {
  switch (c) {
    case ErrorClass::invalid_argument: return 2;
    case ErrorClass::precision_exceeded: return 3;
    case ErrorClass::parse_error: return 4;
    case ErrorClass::ramanujan_violation: return 5;
    case ErrorClass::construction_failure: return 6;
    case ErrorClass::io_error: return 7;
  }
  return 1;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, const std::string& msg)
      : std::runtime_error(msg), cls_(cls) {}
  ErrorClass error_class() const { return cls_; }

 private:
  ErrorClass cls_;
};

struct InvalidArgument : Error {
  explicit InvalidArgument(const std::string& m)
      : Error(ErrorClass::invalid_argument, m) {}
};

struct PrecisionExceeded : Error {
  explicit PrecisionExceeded(const std::string& m)
      : Error(ErrorClass::precision_exceeded, m) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& m)
      : Error(ErrorClass::parse_error, m) {}
};

struct RamanujanViolation : Error {
  explicit RamanujanViolation(const std::string& m)
      : Error(ErrorClass::ramanujan_violation, m) {}
};

struct ConstructionFailure : Error {
  explicit ConstructionFailure(const std::string& m)
      : Error(ErrorClass::construction_failure, m) {}
};

struct IoError : Error {
  explicit IoError(const std::string& m) : Error(ErrorClass::io_error, m) {}
};

}  // namespace bkv
