#pragma once

#include <stdexcept>
#include <string>

namespace sos {

// Base for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad user input: malformed config, violated workload invariants. Exit 1.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// File system / serialization failures. Exit 2.
class IoError : public Error {
 public:
  using Error::Error;
};

// Internal contract violations: format mismatches, popping an empty
// schedule, freeing an unknown id. Reaching one of these is a bug. Exit 3.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace sos
