#pragma once

#include <stdexcept>
#include <string>

namespace tik {

enum class ErrorKind {
  DivisionByZero,
  NotPrime,
  Dimension,
  Singular,
  Budget,
  Precondition,
  WitnessInvalid,
  RecoveryUnsupported,
  Parse,
  OracleInconsistent,
  Unsupported,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind), detail_(what) {}
  ErrorKind kind() const { return kind_; }
  // Message without the kind prefix.
  const std::string& detail() const { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace tik
