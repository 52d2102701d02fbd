#pragma once

#include <stdexcept>
#include <string>

namespace mlab {

enum class ErrorKind {
  Structural,   // shape or model mismatch
  Domain,       // parameter outside the admissible range
  Degenerate,   // input for which the operation is undefined (e.g. zero vector)
  Evaluation,   // a symbol or function could not be evaluated
  Config,       // malformed experiment configuration
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + " error: " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool ok, ErrorKind kind, const std::string& what) {
  if (!ok) fail(kind, what);
}

}  // namespace mlab
