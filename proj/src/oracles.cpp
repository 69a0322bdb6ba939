#include "nopair/oracles.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <stdexcept>

namespace nopair::oracles {

namespace {

void accumulate(std::map<Monomial, HighReal>& into, const Monomial& m, const HighReal& c) {
  if (c == 0) return;
  auto [it, inserted] = into.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) into.erase(it);
  }
}

}  // namespace

PolyGaussian PolyGaussian::gaussian(const HighReal& zeta) {
  PolyGaussian g;
  g.zeta = zeta;
  g.terms[{0, 0, 0, 0}] = pow(2 * zeta / pi(), HighReal(0.75));
  return g;
}

PolyGaussian PolyGaussian::polynomial(std::map<Monomial, HighReal> terms) {
  PolyGaussian g;
  g.terms = std::move(terms);
  return g;
}

PolyGaussian PolyGaussian::derivative(int axis) const {
  PolyGaussian out;
  out.zeta = zeta;
  for (const auto& [m, c] : terms) {
    if (m[axis] > 0) {
      Monomial d = m;
      d[axis] -= 1;
      accumulate(out.terms, d, c * m[axis]);
    }
    if (m[3] != 0) {  // d r^p = p r^{p-2} x_axis
      Monomial d = m;
      d[axis] += 1;
      d[3] -= 2;
      accumulate(out.terms, d, c * m[3]);
    }
    if (zeta != 0) {
      Monomial d = m;
      d[axis] += 1;
      accumulate(out.terms, d, -2 * zeta * c);
    }
  }
  return out;
}

PolyGaussian PolyGaussian::derivative(std::initializer_list<int> axes) const {
  PolyGaussian out = *this;
  for (int a : axes) out = out.derivative(a);
  return out;
}

PolyGaussian operator*(const PolyGaussian& a, const PolyGaussian& b) {
  PolyGaussian out;
  out.zeta = a.zeta + b.zeta;
  for (const auto& [ma, ca] : a.terms)
    for (const auto& [mb, cb] : b.terms)
      accumulate(out.terms, {ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2], ma[3] + mb[3]}, ca * cb);
  return out;
}

PolyGaussian operator+(const PolyGaussian& a, const PolyGaussian& b) {
  if (a.zeta != b.zeta) throw std::invalid_argument("PolyGaussian sum needs equal exponents");
  PolyGaussian out = a;
  for (const auto& [m, c] : b.terms) accumulate(out.terms, m, c);
  return out;
}

PolyGaussian operator*(const HighReal& s, const PolyGaussian& a) {
  PolyGaussian out;
  out.zeta = a.zeta;
  for (const auto& [m, c] : a.terms) accumulate(out.terms, m, s * c);
  return out;
}

PolyGaussian kernel_one() { return PolyGaussian::polynomial({{{0, 0, 0, 0}, HighReal(1)}}); }

PolyGaussian kernel_inverse_r() { return PolyGaussian::polynomial({{{0, 0, 0, -1}, HighReal(1)}}); }

PolyGaussian kernel_rhat(int axis) {
  Monomial m{0, 0, 0, -1};
  m[axis] = 1;
  return PolyGaussian::polynomial({{m, HighReal(1)}});
}

PolyGaussian kernel_breit(int a, int b) {
  std::map<Monomial, HighReal> t;
  if (a == b) accumulate(t, {0, 0, 0, -1}, HighReal(0.5));
  Monomial m{0, 0, 0, -3};
  m[a] += 1;
  m[b] += 1;
  accumulate(t, m, HighReal(0.5));
  return PolyGaussian::polynomial(std::move(t));
}

HighReal angular_moment(int a, int b, int c) {
  if (a % 2 || b % 2 || c % 2) return 0;
  using boost::math::tgamma;
  const HighReal half(0.5);
  return 2 * tgamma(HighReal(a + 1) * half) * tgamma(HighReal(b + 1) * half) *
         tgamma(HighReal(c + 1) * half) / tgamma(HighReal(a + b + c + 3) * half);
}

QuadratureResult integrate_3d(const PolyGaussian& f, const QuadratureOptions& options) {
  if (!(f.zeta > 0)) throw std::invalid_argument("integrate_3d needs a decaying Gaussian factor");
  // Radial coefficients after angular integration, in the scaled variable
  // s = sqrt(zeta) r: r^n dr -> zeta^{-(n+1)/2} s^n ds.
  std::map<int, HighReal> radial;
  for (const auto& [m, c] : f.terms) {
    const HighReal ang = angular_moment(m[0], m[1], m[2]);
    if (ang == 0) continue;
    const int n = m[0] + m[1] + m[2] + m[3] + 2;
    if (n <= -1) throw std::invalid_argument("integrate_3d: non-integrable singularity at the origin");
    radial[n] += c * ang * pow(f.zeta, -HighReal(n + 1) / 2);
  }
  if (radial.empty()) return {HighReal(0), HighReal(0)};
  auto g = [&](const HighReal& s) {
    HighReal v = 0, power = 1;
    int current = 0;
    for (const auto& [n, c] : radial) {
      for (; current < n; ++current) power *= s;
      v += c * power;
    }
    return v * exp(-s * s);
  };
  return integrate(g, HighReal(0), std::numeric_limits<HighReal>::infinity(), options);
}

HighReal matrix_element(const PolyGaussian& bra, const PolyGaussian& kernel, const PolyGaussian& ket,
                        const QuadratureOptions& options) {
  return integrate_3d(bra * kernel * ket, options).value;
}

QuadratureResult quad_radial(const QuadratureSpec& spec) {
  QuadratureOptions options;
  options.rel_tolerance = 1e-30;
  options.abs_tolerance = spec.abs_tolerance;
  options.max_depth = spec.max_depth;
  return integrate(spec.integrand, spec.lower, spec.upper, options);
}

HighReal finite_difference_slope(const std::function<HighReal(const HighReal&)>& f, const HighReal& x0,
                                 const HighReal& h) {
  return (f(x0 + h) - f(x0 - h)) / (2 * h);
}

}  // namespace nopair::oracles
