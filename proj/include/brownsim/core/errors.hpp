#pragma once

#include <stdexcept>
#include <string>

namespace brownsim {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters or configuration input.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Two particles at zero separation inside a force kernel.
class SingularityError : public Error {
 public:
  SingularityError(std::size_t i, std::size_t k)
      : Error("zero separation between particles " + std::to_string(i) + " and " +
              std::to_string(k)),
        first(i),
        second(k) {}
  std::size_t first;
  std::size_t second;
};

/// Initial triangulation could not be constructed.
class BuildError : public Error {
 public:
  using Error::Error;
};

/// An iterative procedure hit its iteration cap.
class NonConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A time step could not be completed (rollback budget exhausted, non-finite state).
class StepFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace brownsim
