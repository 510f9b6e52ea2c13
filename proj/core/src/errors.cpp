#include "wreathwalk/errors.hpp"

namespace wreathwalk {

ParseError::ParseError(const std::string& what, std::size_t position)
    : Error(what + " (at offset " + std::to_string(position) + ")"),
      position_(position) {}

ResourceError::ResourceError(const std::string& what, std::size_t current_size)
    : Error(what + " (current size " + std::to_string(current_size) + ")"),
      current_size_(current_size) {}

}  // namespace wreathwalk
