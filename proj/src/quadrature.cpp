#include "nopair/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "nopair/errors.hpp"

namespace nopair {

QuadratureResult integrate(const std::function<HighReal(const HighReal&)>& f, const HighReal& a,
                           const HighReal& b, const QuadratureOptions& options) {
  using rule = boost::math::quadrature::gauss_kronrod<HighReal, 61>;
  HighReal error = 0, l1 = 0;
  const HighReal upper = isinf(b) ? std::numeric_limits<HighReal>::max() : b;
  const HighReal value =
      rule::integrate(f, a, upper, options.max_depth, HighReal(options.rel_tolerance), &error, &l1);
  // Relative to the L1 norm so that integrands with internal cancellation are
  // judged by the accuracy the rule can actually deliver.
  const HighReal allowed = std::max(HighReal(options.abs_tolerance), HighReal(options.rel_tolerance) * l1);
  if (!(error <= allowed) || isnan(value))
    throw QuadratureNotConverged(static_cast<double>(error), static_cast<double>(allowed));
  return {value, error};
}

}  // namespace nopair
