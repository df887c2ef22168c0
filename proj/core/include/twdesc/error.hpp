#pragma once

#include <stdexcept>
#include <string>

namespace twdesc {

// Input errors are malformed or inconsistent data handed to the library;
// math errors are failed checks on well-formed data (a nonzero residual, a
// failed induction invariant, a non-invertible transition).
enum class ErrorKind { kInput, kMath };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_input(const std::string& what) {
  throw Error(ErrorKind::kInput, what);
}

[[noreturn]] inline void throw_math(const std::string& what) {
  throw Error(ErrorKind::kMath, what);
}

}  // namespace twdesc
