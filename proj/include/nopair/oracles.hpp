#pragma once

// Brute-force verifiers for tests. Nothing here shares code with the closed
// forms: derivatives of Gaussians are expanded term by term as monomials
// x^a y^b z^c r^p, the angular integrals are done exactly and the remaining
// radial integral goes through adaptive quadrature.

#include <array>
#include <functional>
#include <map>

#include "nopair/precision.hpp"
#include "nopair/quadrature.hpp"

namespace nopair::oracles {

/// Exponents (a, b, c, p) of x^a y^b z^c r^p.
using Monomial = std::array<int, 4>;

/// A polynomial in x, y, z, r (negative r powers allowed) times exp(-zeta r^2).
struct PolyGaussian {
  HighReal zeta = 0;
  std::map<Monomial, HighReal> terms;

  /// Normalized spherical Gaussian (2 zeta / pi)^{3/4} exp(-zeta r^2).
  static PolyGaussian gaussian(const HighReal& zeta);
  /// A bare polynomial (zeta = 0), e.g. an operator kernel.
  static PolyGaussian polynomial(std::map<Monomial, HighReal> terms);

  /// Partial derivative along axis 0, 1 or 2.
  PolyGaussian derivative(int axis) const;
  PolyGaussian derivative(std::initializer_list<int> axes) const;

  friend PolyGaussian operator*(const PolyGaussian& a, const PolyGaussian& b);
  friend PolyGaussian operator+(const PolyGaussian& a, const PolyGaussian& b);
  friend PolyGaussian operator*(const HighReal& s, const PolyGaussian& a);
};

/// Kernels used by the matrix elements.
PolyGaussian kernel_one();
PolyGaussian kernel_inverse_r();
PolyGaussian kernel_rhat(int axis);               // r_axis / r
PolyGaussian kernel_breit(int a, int b);          // (delta_ab + r_a r_b / r^2) / (2 r)

/// Surface integral of x^a y^b z^c over the unit sphere.
HighReal angular_moment(int a, int b, int c);

/// int d^3r f, with f spherically reduced to a radial function and integrated
/// by adaptive quadrature on [0, infinity).
QuadratureResult integrate_3d(const PolyGaussian& f, const QuadratureOptions& options = {});

/// <bra| kernel |ket> for real functions.
HighReal matrix_element(const PolyGaussian& bra, const PolyGaussian& kernel, const PolyGaussian& ket,
                        const QuadratureOptions& options = {});

struct QuadratureSpec {
  std::function<HighReal(const HighReal&)> integrand;
  HighReal lower = 0;
  /// +infinity selects the semi-infinite transform.
  HighReal upper = std::numeric_limits<HighReal>::infinity();
  double abs_tolerance = 1e-30;
  unsigned max_depth = 30;
};

/// Throws QuadratureNotConverged.
QuadratureResult quad_radial(const QuadratureSpec& spec);

/// Central difference (f(x0 + h) - f(x0 - h)) / 2h.
HighReal finite_difference_slope(const std::function<HighReal(const HighReal&)>& f, const HighReal& x0,
                                 const HighReal& h);

}  // namespace nopair::oracles
