#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ksc {

/// Broad failure classes. The CLI prints these as the machine-greppable
/// prefix of its one-line diagnostics.
enum class ErrorKind {
  InvalidArgument,
  DimensionMismatch,
  Numerical,
  Io,
  Format,
  Training,
};

std::string_view to_string(ErrorKind kind);

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

}  // namespace ksc
