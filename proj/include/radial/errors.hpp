#pragma once

#include <stdexcept>
#include <string>

namespace radial {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// The anchor point (e or E) is not strictly inside the cone.
struct NotStrictlyFeasible : Error {
  using Error::Error;
};

/// Ray from the anchor through the point never exits the cone
/// (lambda_min >= 1, or the 1 - lambda_min denominator is degenerate).
struct NotProjectable : Error {
  using Error::Error;
};

/// Constraint rows (optionally together with the objective) are linearly
/// dependent; the Gram matrix has no Cholesky factorization.
struct DependentConstraints : Error {
  using Error::Error;
};

/// A projected subgradient vanished where a nonzero one was required.
struct ZeroSubgradient : Error {
  using Error::Error;
};

/// The objective is orthogonal to the constraint nullspace: every feasible
/// point is optimal and the radial machinery has nothing to do.
struct ObjectiveOrthogonal : Error {
  using Error::Error;
};

/// Moving from the anchor against the projected objective never exits the
/// cone, which certifies an unbounded problem.
struct UnboundedCertificate : Error {
  using Error::Error;
};

/// Instance too large for a brute-force oracle.
struct OracleTooLarge : Error {
  using Error::Error;
};

/// Invalid configuration value (epsilon outside (0,1), n < 2 for smoothing, ...).
struct ConfigError : Error {
  using Error::Error;
};

/// Instance failed validation; solvers refuse to run it.
struct InvalidInstance : Error {
  using Error::Error;
};

/// Malformed input file.
struct ParseError : Error {
  ParseError(const std::string& what, long line = -1)
      : Error(line >= 0 ? what + " (line " + std::to_string(line) + ")" : what), line_number(line) {}
  long line_number;
};

}  // namespace radial
