#pragma once

#include <stdexcept>
#include <string>

namespace hb {

// Raised for any argument outside an operation's documented domain.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace hb
