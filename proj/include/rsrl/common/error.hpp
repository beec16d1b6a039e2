#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rsrl {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

/// Malformed or out-of-vocabulary input (unregistered atoms, bad JSON, ...).
class InputError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "input"; }
};

/// An explicit size cap was exceeded; results are never truncated silently.
class ResourceError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "resource"; }
};

/// Configuration violates an assumption the component relies on.
class ConfigError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "config"; }
};

/// A nonempty chosen scenario whose obligations share no first action.
class DegenerateShieldError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "degenerate-shield"; }
};

/// Feedback that would make the priority order cyclic. The theory is left untouched.
class InconsistentFeedbackError : public Error {
 public:
  InconsistentFeedbackError(const std::string& what, std::vector<std::string> cycle)
      : Error(what), cycle_(std::move(cycle)) {}
  const char* kind() const noexcept override { return "inconsistent-feedback"; }
  const std::vector<std::string>& cycle() const noexcept { return cycle_; }

 private:
  std::vector<std::string> cycle_;
};

/// Operation not allowed in the current state (stepping a terminal state, ...).
class StateError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "state"; }
};

}  // namespace rsrl
