#pragma once

#include <stdexcept>
#include <string>

namespace quadax {

/// Failure categories. The CLI maps them onto its exit codes
/// (Degenerate -> 1, InvalidInput -> 2).
enum class ErrorKind { InvalidInput, Degenerate };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error invalid_input(const std::string& what) { return Error(ErrorKind::InvalidInput, what); }
inline Error degenerate(const std::string& what) { return Error(ErrorKind::Degenerate, what); }

/// Raised by the Chasles pipeline; carries the name of the failing step.
class StepError : public Error {
 public:
  StepError(std::string step, const Error& cause)
      : Error(cause.kind(), step + ": " + cause.what()), step_(std::move(step)) {}

  const std::string& step() const noexcept { return step_; }

 private:
  std::string step_;
};

}  // namespace quadax
