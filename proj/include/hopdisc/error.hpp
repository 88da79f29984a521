#pragma once

#include <stdexcept>
#include <string>

namespace hopdisc {

// Raised when caller-supplied input violates a documented precondition.
// The CLI maps this to exit status 1; anything else escaping is status 2.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hopdisc
