#pragma once

#include <stdexcept>
#include <string>

namespace bqs {

/// Raised when a parameter set violates one of its documented invariants.
/// The message lists every violated invariant, one per line.
class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a numerical routine fails to reach its accuracy target
/// (non-convergent quadrature, degenerate imaging configuration, ...).
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an input file (CSV, JSON config) cannot be parsed.
class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace bqs
