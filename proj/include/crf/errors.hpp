#pragma once

#include <stdexcept>
#include <string>

namespace crf {

// Malformed text input. The CLI maps this to exit code 2.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operation was called outside its contract. The CLI maps this to exit code 3.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two independent computations disagree. The CLI maps this to exit code 4.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace crf
