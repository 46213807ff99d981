#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace chipfas {

using Vertex = std::uint32_t;

/// Base of every error raised by the library. `exit_code()` is the CLI
/// status the error maps to: 2 invalid input, 3 resource cap, 4 violated
/// precondition, 1 internal.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  [[nodiscard]] virtual int exit_code() const noexcept { return 1; }
};

class InvalidInput : public Error {
 public:
  using Error::Error;
  [[nodiscard]] int exit_code() const noexcept override { return 2; }
};

class ParseError : public InvalidInput {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InvalidInput("line " + std::to_string(line) + ": " + what), line_(line) {}
  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
  [[nodiscard]] int exit_code() const noexcept override { return 3; }
};

/// Firing budget exhausted during stabilization.
class StepBudgetExceeded : public CapExceeded {
 public:
  using CapExceeded::CapExceeded;
};

class ChipOverflow : public CapExceeded {
 public:
  ChipOverflow() : CapExceeded("chip count overflow") {}
};

class PreconditionError : public Error {
 public:
  using Error::Error;
  [[nodiscard]] int exit_code() const noexcept override { return 4; }
};

class IllegalFiring : public PreconditionError {
 public:
  explicit IllegalFiring(Vertex v)
      : PreconditionError("vertex " + std::to_string(v) + " is not active"), vertex_(v) {}
  [[nodiscard]] Vertex vertex() const noexcept { return vertex_; }

 private:
  Vertex vertex_;
};

class UnstableConfiguration : public PreconditionError {
 public:
  explicit UnstableConfiguration(Vertex active)
      : PreconditionError("configuration is not stable: vertex " + std::to_string(active) +
                          " is active"),
        active_(active) {}
  [[nodiscard]] Vertex active_vertex() const noexcept { return active_; }

 private:
  Vertex active_;
};

/// Burning failed; carries the vertices that never fired.
class NotRecurrent : public PreconditionError {
 public:
  explicit NotRecurrent(std::vector<Vertex> unburnt)
      : PreconditionError("configuration is not recurrent"), unburnt_(std::move(unburnt)) {}
  [[nodiscard]] const std::vector<Vertex>& unburnt() const noexcept { return unburnt_; }

 private:
  std::vector<Vertex> unburnt_;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace chipfas
