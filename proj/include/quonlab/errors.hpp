#pragma once

#include <stdexcept>
#include <string>

namespace quonlab {

/// Invalid run configuration (bad q range, mixed backends, bad mode, ...).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An operator would raise the particle number beyond the configured N_max.
struct TruncationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Operation undefined at |q| = 1 (series coefficients, coupled-state norms).
struct EndpointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The coefficient linear system is inconsistent or underdetermined.
struct SolveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// API used out of order (e.g. series requested beyond the solved order).
struct StateError : std::logic_error {
  using std::logic_error::logic_error;
};

/// Syntax error in the identity mini-language, with source position.
struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, int line, int col)
      : std::runtime_error(msg + " at " + std::to_string(line) + ":" +
                           std::to_string(col)),
        line(line),
        col(col) {}
  int line;
  int col;
};

}  // namespace quonlab
