#pragma once

#include <stdexcept>
#include <string>

namespace qbec {

/// Base class of every exception thrown by the toolkit.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotHermitian : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct NegativeEigenvalue : Error { using Error::Error; };
struct InvalidDimension : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct NotPSD : Error { using Error::Error; };
struct OutOfRange : Error { using Error::Error; };
struct UnsupportedDimensions : Error { using Error::Error; };
struct RankZero : Error { using Error::Error; };

/// A state or channel violates one of its invariants (exit code 1 in the CLI).
struct ValidationError : Error { using Error::Error; };

/// Malformed input file or unreadable path (exit code 2 in the CLI).
struct ParseError : Error { using Error::Error; };

}  // namespace qbec
