#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mll {

// Malformed or inconsistent input: bad files, unknown symbols, violated
// operation preconditions. The CLI maps all of these to exit status 3.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public InputError {
 public:
  SyntaxError(std::size_t offset, const std::string& what)
      : InputError("syntax error at offset " + std::to_string(offset) + ": " + what), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class SymbolError : public InputError {
 public:
  using InputError::InputError;
};

class PreconditionError : public InputError {
 public:
  using InputError::InputError;
};

// A configured size bound (universe size, poset size, lattice size) was exceeded.
class BoundError : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace mll
