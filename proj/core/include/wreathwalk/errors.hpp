#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wreathwalk {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input. position is a byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position);
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// A configured cap (ball size, convolution support, ...) was exceeded.
class ResourceError : public Error {
 public:
  ResourceError(const std::string& what, std::size_t current_size);
  std::size_t current_size() const noexcept { return current_size_; }

 private:
  std::size_t current_size_;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// Operands do not belong to the same group.
class SpecMismatchError : public Error {
 public:
  using Error::Error;
};

}  // namespace wreathwalk
