#pragma once

#include <stdexcept>
#include <string>

namespace soficlab {

// Malformed or unusable input (bad JSON, dangling ids, precondition failure).
// The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal invariant that a construction asserts at runtime failed.
class AssertionFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void check_invariant(bool condition, const std::string& what) {
  if (!condition) throw AssertionFailure(what);
}

}  // namespace soficlab
