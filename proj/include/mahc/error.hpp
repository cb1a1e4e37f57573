// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace mahc {

/// Failure category. Maps one-to-one onto the C API status codes and the
/// CLI exit codes.
enum class ErrorKind {
  InvalidArgument = 1,  // caller misuse: bad config, out-of-range index
  Data = 2,             // malformed or inconsistent input data
  Internal = 3,         // an invariant of the algorithm was breached
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

/// Hard invariant check; throws ErrorKind::Internal when violated.
inline void ensure(bool condition, const char* what) {
  if (!condition) throw Error(ErrorKind::Internal, std::string("invariant violated: ") + what);
}

}  // namespace mahc
