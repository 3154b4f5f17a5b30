#pragma once

#include <stdexcept>
#include <string>

namespace degseq {

// Malformed or out-of-range user input. Maps to CLI exit code 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Decomposition wider than the user-supplied limit. Exit code 2.
class WidthExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal consistency check failed. Exit code 3.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace degseq
