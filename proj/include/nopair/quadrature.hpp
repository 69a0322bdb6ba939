#pragma once

// Adaptive Gauss-Kronrod integration at working precision.

#include <functional>
#include <limits>

#include "nopair/precision.hpp"

namespace nopair {

struct QuadratureResult {
  HighReal value;
  HighReal error_estimate;
};

struct QuadratureOptions {
  /// Relative target handed to the bisection; the result must also satisfy
  /// error_estimate <= max(abs_tolerance, rel_tolerance * int |f|).
  double rel_tolerance = 1e-28;
  double abs_tolerance = 0;
  unsigned max_depth = 30;
};

/// Integrates f over [a, b]; b may be +infinity (std::numeric_limits<HighReal>::infinity()).
/// Throws QuadratureNotConverged when the error estimate misses the tolerance.
QuadratureResult integrate(const std::function<HighReal(const HighReal&)>& f, const HighReal& a,
                           const HighReal& b, const QuadratureOptions& options = {});

}  // namespace nopair
