#pragma once

#include <stdexcept>
#include <string>

namespace fnoise {

/// An enumeration, work, or basis-size guard was exceeded.
class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A Fock-space computation would leave the truncated particle range.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fnoise
