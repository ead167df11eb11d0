#pragma once

#include <stdexcept>
#include <string>

namespace nsg {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input validation
struct NonNormalizedDistribution : Error { using Error::Error; };
struct PayoffOutOfRange : Error { using Error::Error; };
struct EmptyGame : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };

// Verifier compilation
struct EnumerationTooLarge : Error { using Error::Error; };
struct IncompleteSpec : Error { using Error::Error; };

// LP pipeline
struct ShapeMismatch : Error { using Error::Error; };
struct InfeasibleInput : Error { using Error::Error; };
struct NotApproxFeasible : Error { using Error::Error; };

// Solvers / engines
struct InvalidEpsilon : Error { using Error::Error; };
struct NegativeEntry : Error { using Error::Error; };
struct InvalidThresholds : Error { using Error::Error; };
struct TooLargeForExact : Error { using Error::Error; };

// File I/O: carries a 1-based line number when the location is known.
struct ParseError : Error {
  ParseError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_number(line) {}
  int line_number;
};

}  // namespace nsg
