#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nopair {

/// Base class of every recoverable numerical failure. The CLI maps these to
/// exit code 1.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class NonPositiveDefinite : public NumericalError {
public:
  explicit NonPositiveDefinite(std::size_t index)
      : NumericalError("matrix is not positive definite (pivot " + std::to_string(index) + ")"),
        index_(index) {}
  std::size_t index() const noexcept { return index_; }

private:
  std::size_t index_;
};

class NoConvergence : public NumericalError {
public:
  explicit NoConvergence(std::size_t iterations)
      : NumericalError("iterative eigensolver did not converge after " +
                       std::to_string(iterations) + " sweeps"),
        iterations_(iterations) {}
  std::size_t iterations() const noexcept { return iterations_; }

private:
  std::size_t iterations_;
};

class RankDeficient : public NumericalError {
public:
  explicit RankDeficient(std::size_t column)
      : NumericalError("design matrix is rank deficient at column " + std::to_string(column)),
        column_(column) {}
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t column_;
};

class QuadratureNotConverged : public NumericalError {
public:
  QuadratureNotConverged(double error_estimate, double tolerance)
      : NumericalError("adaptive quadrature did not reach tolerance " + std::to_string(tolerance) +
                       " (estimate " + std::to_string(error_estimate) + ")"),
        error_estimate_(error_estimate) {}
  double error_estimate() const noexcept { return error_estimate_; }

private:
  double error_estimate_;
};

/// Raised when a spin contraction leaves an imaginary part: a Cartesian
/// index-order bug, never a property of valid input.
class ResidualImaginary : public NumericalError {
public:
  explicit ResidualImaginary(const std::string& where)
      : NumericalError("residual imaginary part after spin contraction in " + where) {}
};

class AmbiguousCut : public NumericalError {
public:
  explicit AmbiguousCut(const std::string& detail)
      : NumericalError("positive-energy cut is ambiguous: " + detail) {}
};

class DegenerateDenominator : public NumericalError {
public:
  explicit DegenerateDenominator(std::size_t state)
      : NumericalError("degenerate second-order denominator with state " + std::to_string(state)),
        state_(state) {}
  std::size_t state() const noexcept { return state_; }

private:
  std::size_t state_;
};

class IndexOutOfRange : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

/// Invalid user-facing input (bad file, bad exponent). CLI exit code 2 when it
/// stems from arguments, 1 otherwise.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

class NonPositiveExponent : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace nopair
