#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mrp {

/// Raised when an operation's precondition is violated by its arguments.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by the multiset / corpus text parsers. `position` is the 0-based
/// character offset of the offending token within the parsed text.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace mrp
