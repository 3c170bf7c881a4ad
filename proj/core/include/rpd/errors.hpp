#pragma once

#include <stdexcept>
#include <string>

namespace rpd {

/// Bad arguments: dimension mismatches, out-of-range counts, malformed specs.
class InvalidArgument : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// An operation was requested on an object that lacks the required state,
/// e.g. scaling distance on a polytope without a central point.
class StateError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Base class for failures that come from the numerics rather than the input.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Some slack b_i - <c, y_i> is not positive for the central point.
class NotInteriorError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

/// The polyhedron (or an LP over it) is unbounded.
class NotBoundedError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

/// Empty polytope or zero inscribed radius where a full-dimensional body is needed.
class DegeneratePolytopeError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

/// The simplex solver hit its iteration limit or failed its own post-check.
class SolverFailure : public NumericalError {
public:
  using NumericalError::NumericalError;
};

/// Malformed CSV or model payload. The message carries the location.
class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A file could not be opened, read or written.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class UnsupportedVersion : public ParseError {
public:
  using ParseError::ParseError;
};

} // namespace rpd
