#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fim {

// Base of the toolkit's error taxonomy. Each kind maps to a distinct process
// exit code in the command-line front end.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const noexcept = 0;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what), position_(position) {}
  explicit ParseError(const std::string& what) : Error(what) {}

  std::size_t position() const noexcept { return position_; }
  int exit_code() const noexcept override { return 2; }

 private:
  std::size_t position_ = 0;
};

// A precondition or certification requirement was not met.
class PreconditionError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 3; }
};

// A construction or enumeration would exceed its resource guard.
class ResourceError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 4; }
};

}  // namespace fim
