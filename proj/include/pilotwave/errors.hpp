#pragma once

#include <stdexcept>
#include <string>

namespace pw {

/// Velocity requested where the density is below the node floor.  The
/// trajectory integrator catches this and aborts the path cleanly.
class NodeError : public std::runtime_error {
 public:
  explicit NodeError(const std::string& what) : std::runtime_error(what) {}
};

/// A quadrature or tail-convergence check failed.
class AccuracyError : public std::runtime_error {
 public:
  explicit AccuracyError(const std::string& what) : std::runtime_error(what) {}
};

/// Bad operation input (non-normalized spinor, negative energy, ...).
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// Config-file problem; carries the offending line when known (0 = n/a).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace pw
