#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fsplit {

// Base of every error thrown by the library. The CLI maps the concrete
// subclasses onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands built over different rings.
class ContextMismatch : public Error {
 public:
  ContextMismatch() : Error("polynomials belong to different ring contexts") {}
};

// A mathematical precondition failed: bad prime, unit ideal where a proper
// ideal is required, unusable test element, etc.
class DomainError : public Error {
 public:
  using Error::Error;
};

// An iterative computation hit its configured bound before stabilizing.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, unsigned reached)
      : Error(what), reached_(reached) {}
  unsigned reached() const noexcept { return reached_; }

 private:
  unsigned reached_;
};

// Input text could not be parsed. `offset` is a byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : Error(message + " at offset " + std::to_string(offset)),
        message_(message),
        offset_(offset) {}
  const std::string& message() const noexcept { return message_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::string message_;
  std::size_t offset_;
};

}  // namespace fsplit
