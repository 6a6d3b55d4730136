#pragma once

#include <stdexcept>
#include <string>

namespace dunkl {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parameter lies outside the mathematical domain of an operation
// (mu <= -1/2, negative Gould-Hopper parameter, beta outside (0, 1], ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A value overflowed or became non-finite.
class RangeError : public Error {
 public:
  using Error::Error;
};

// A family whose weights are not known to be nonnegative was used where
// positivity is required, or a negative weight was produced.
class PositivityError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration: unknown function name, missing metadata, bad grid.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// The two independent routes to the second central moment disagree.
class TranscriptionError : public Error {
 public:
  using Error::Error;
};

}  // namespace dunkl
