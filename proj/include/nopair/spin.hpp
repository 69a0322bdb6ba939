#pragma once

// Exact two-particle Pauli algebra. Entries of any product of sigma matrices
// are Gaussian integers, so the spin factors carry no rounding at all.

#include <array>
#include <cstdint>
#include <initializer_list>

namespace nopair::spin {

struct GaussInt {
  std::int64_t re = 0;
  std::int64_t im = 0;

  friend constexpr GaussInt operator+(GaussInt a, GaussInt b) { return {a.re + b.re, a.im + b.im}; }
  friend constexpr GaussInt operator*(GaussInt a, GaussInt b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend constexpr bool operator==(GaussInt, GaussInt) = default;
};

/// Operator on C^2 (x) C^2, basis index 2*s1 + s2 with spin-up = 0.
struct Operator {
  std::array<std::array<GaussInt, 4>, 4> m{};

  static constexpr Operator identity() {
    Operator o;
    for (int i = 0; i < 4; ++i) o.m[i][i] = {1, 0};
    return o;
  }

  friend constexpr Operator operator*(const Operator& a, const Operator& b) {
    Operator o;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        GaussInt s{};
        for (int k = 0; k < 4; ++k) s = s + a.m[i][k] * b.m[k][j];
        o.m[i][j] = s;
      }
    return o;
  }
  friend constexpr Operator operator+(const Operator& a, const Operator& b) {
    Operator o;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) o.m[i][j] = a.m[i][j] + b.m[i][j];
    return o;
  }
  friend constexpr bool operator==(const Operator&, const Operator&) = default;
};

/// sigma_axis acting on particle 1 or 2 (axis 0, 1, 2 = x, y, z).
constexpr Operator sigma(int particle, int axis) {
  constexpr std::array<std::array<std::array<GaussInt, 2>, 2>, 3> pauli{{
      {{{{{0, 0}, {1, 0}}}, {{{1, 0}, {0, 0}}}}},
      {{{{{0, 0}, {0, -1}}}, {{{0, 1}, {0, 0}}}}},
      {{{{{1, 0}, {0, 0}}}, {{{0, 0}, {-1, 0}}}}},
  }};
  Operator o;
  for (int a1 = 0; a1 < 2; ++a1)
    for (int a2 = 0; a2 < 2; ++a2)
      for (int b1 = 0; b1 < 2; ++b1)
        for (int b2 = 0; b2 < 2; ++b2) {
          GaussInt v{};
          if (particle == 1) {
            if (a2 == b2) v = pauli[axis][a1][b1];
          } else {
            if (a1 == b1) v = pauli[axis][a2][b2];
          }
          o.m[2 * a1 + a2][2 * b1 + b2] = v;
        }
  return o;
}

/// sigma_1 . sigma_2
constexpr Operator sigma_dot() {
  Operator o;
  for (int a = 0; a < 3; ++a) o = o + sigma(1, a) * sigma(2, a);
  return o;
}

/// Product sigma(p0, i0) sigma(p1, i1) ... for the given particle pattern and
/// Cartesian indices.
template <std::size_t N>
constexpr Operator chain(const std::array<int, N>& particles, const std::array<int, N>& axes) {
  Operator o = Operator::identity();
  for (std::size_t n = 0; n < N; ++n) o = o * sigma(particles[n], axes[n]);
  return o;
}

}  // namespace nopair::spin
