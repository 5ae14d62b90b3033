#pragma once

#include <stdexcept>
#include <string>

namespace evmarket {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInstance : public Error {
 public:
  using Error::Error;
};

class NonIntegralSolution : public Error {
 public:
  using Error::Error;
};

class OracleBudgetExceeded : public Error {
 public:
  using Error::Error;
};

class MissingPreference : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace evmarket
