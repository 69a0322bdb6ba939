#include "nopair/integrals.hpp"

#include <string>

#include "nopair/errors.hpp"
#include "nopair/spin.hpp"

namespace nopair {

namespace {

const HighReal& sqrt_2_over_pi() {
  static const HighReal v = sqrt(HighReal(2) / pi());
  return v;
}

HighReal delta(int i, int j) { return i == j ? HighReal(1) : HighReal(0); }

// Spin factors of a four-sigma chain for every Cartesian index tuple,
// flattened as ((i*3 + j)*3 + k)*3 + l.
using ChainTable = std::array<spin::Operator, 81>;

ChainTable make_chain_table(std::array<int, 4> particles) {
  ChainTable t{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
          t[((i * 3 + j) * 3 + k) * 3 + l] = spin::chain<4>(particles, {i, j, k, l});
  return t;
}

struct Accumulator {
  SpinBlock re{};
  SpinBlock im{};

  void add(const spin::Operator& op, const HighReal& w) {
    if (w == 0) return;
    for (int x = 0; x < 4; ++x)
      for (int y = 0; y < 4; ++y) {
        const auto g = op.m[x][y];
        if (g.re != 0) re[x][y] += w * HighReal(g.re);
        if (g.im != 0) im[x][y] += w * HighReal(g.im);
      }
  }

  // Drops the imaginary part after checking that it cancelled.
  SpinBlock real(const char* where) const {
    HighReal re_max = 0, im_max = 0;
    for (int x = 0; x < 4; ++x)
      for (int y = 0; y < 4; ++y) {
        re_max = std::max(re_max, HighReal(abs(re[x][y])));
        im_max = std::max(im_max, HighReal(abs(im[x][y])));
      }
    if (im_max > HighReal(1e-25) * re_max && im_max > 100 * epsilon() * re_max)
      throw ResidualImaginary(where);
    return re;
  }
};

template <class Tensor>
SpinBlock contract4(const ChainTable& table, Tensor&& t, const char* where) {
  Accumulator acc;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
          acc.add(table[((i * 3 + j) * 3 + k) * 3 + l], t(i, j, k, l));
  return acc.real(where);
}

// F1 and F2 are symmetric in the two exponents, so callers evaluating many
// index tuples (or both argument orders) share one evaluation.
HighReal i1_from(const HighReal& zm, const HighReal& zn, const Rank2Tensor& g, const Rank4Tensor& h,
                 int i, int j, int k, int l) {
  return 4 * zm * zn * delta(k, l) * g(i, j) - 8 * zm * zn * zn * h(i, j, k, l);
}

HighReal i2_from(const HighReal& zn, const Rank2Tensor& g, const Rank4Tensor& h, int i, int j, int k,
                 int l) {
  return 4 * zn * zn * (delta(j, k) * g(i, l) + delta(j, l) * g(i, k) + delta(k, l) * g(i, j)) -
         8 * zn * zn * zn * h(i, j, k, l);
}

SpinBlock scaled(SpinBlock b, const HighReal& f) {
  for (auto& row : b)
    for (auto& v : row) v *= f;
  return b;
}

}  // namespace

ExponentPair::ExponentPair(HighReal mu, HighReal nu) : zeta_mu(std::move(mu)), zeta_nu(std::move(nu)) {
  if (!(zeta_mu > 0) || !(zeta_nu > 0))
    throw NonPositiveExponent("Gaussian exponents must be strictly positive");
}

HighReal ExponentPair::norm_mu() const { return pow(2 * zeta_mu / pi(), HighReal(0.75)); }
HighReal ExponentPair::norm_nu() const { return pow(2 * zeta_nu / pi(), HighReal(0.75)); }

HighReal overlap(const ExponentPair& p) {
  const HighReal a = p.sum();
  return pow(4 * p.zeta_mu * p.zeta_nu, HighReal(0.75)) / (a * sqrt(a));
}

HighReal coulomb(const ExponentPair& p) {
  return sqrt(32 / pi()) * pow(p.zeta_mu * p.zeta_nu, HighReal(0.75)) / p.sum();
}

HighReal laplacian(const ExponentPair& p) {
  return -6 * p.zeta_mu * p.zeta_nu * overlap(p) / p.sum();
}

HighReal biharmonic(const ExponentPair& p) {
  const HighReal a = p.sum();
  return 120 * sqrt(HighReal(2)) * pow(p.zeta_mu * p.zeta_nu, HighReal(2.75)) / (a * a * a * sqrt(a));
}

Rank2Tensor grad_coulomb_grad(const ExponentPair& p) {
  const HighReal a = p.sum();
  return {HighReal(16) / 3 * sqrt_2_over_pi() * pow(p.zeta_mu * p.zeta_nu, HighReal(1.75)) / (a * a)};
}

Rank4Tensor gradgrad_coulomb_gradgrad(const ExponentPair& p) {
  const HighReal a = p.sum();
  const HighReal zm = p.zeta_mu, zn = p.zeta_nu;
  const HighReal nn = p.norm_mu() * p.norm_nu();
  const HighReal three_delta = nn * 64 * pi() * zm * zm * zn * zn / (15 * a * a * a);
  const HighReal pair = nn * (8 * pi() * zm * zn / a - 16 * pi() * zm * zn * zn / (3 * a * a) -
                              16 * pi() * zn * zm * zm / (3 * a * a));
  return {pair + three_delta, three_delta, three_delta};
}

Rank2Tensor f1(const ExponentPair& p) {
  const HighReal a = p.sum();
  return {HighReal(4) / 3 * sqrt_2_over_pi() * pow(p.zeta_mu * p.zeta_nu, HighReal(0.75)) / (a * a)};
}

Rank4Tensor f2(const ExponentPair& p) {
  const HighReal a = p.sum();
  return Rank4Tensor::symmetric(HighReal(8) / 15 * sqrt_2_over_pi() *
                                pow(p.zeta_mu * p.zeta_nu, HighReal(0.75)) / (a * a * a));
}

HighReal i1(const ExponentPair& p, int i, int j, int k, int l) {
  return i1_from(p.zeta_mu, p.zeta_nu, f1(p), f2(p), i, j, k, l);
}

HighReal i2(const ExponentPair& p, int i, int j, int k, int l) {
  return i2_from(p.zeta_nu, f1(p), f2(p), i, j, k, l);
}

SpinBlock spin_identity(const HighReal& scale) {
  SpinBlock b{};
  for (int i = 0; i < 4; ++i) b[i][i] = scale;
  return b;
}

// The Breit kernel (delta_ab + r_a r_b / r^2) / (2r) equals delta_ab / r minus
// half of the tensor d_a d_b r. The second piece is what the I1/I2 by-parts
// combinations evaluate; the first reuses the Coulomb-family closed forms.
SpinBlock breit_block_unscaled(BreitBlock which, const ExponentPair& p) {
  static const ChainTable t1212 = make_chain_table({1, 2, 1, 2});
  static const ChainTable t2121 = make_chain_table({2, 1, 2, 1});
  static const ChainTable t1122 = make_chain_table({1, 1, 2, 2});
  static const ChainTable t2112 = make_chain_table({2, 1, 1, 2});

  const HighReal zm = p.zeta_mu, zn = p.zeta_nu;
  const Rank2Tensor f1t = f1(p);
  const Rank4Tensor f2t = f2(p);
  const HighReal c = coulomb(p);
  const HighReal g = f1t.delta;
  const HighReal half(0.5);
  // Argument order (mu, nu) or the swapped order (nu, mu).
  auto I1 = [&](bool swap, int i, int j, int k, int l) {
    return swap ? i1_from(zn, zm, f1t, f2t, i, j, k, l) : i1_from(zm, zn, f1t, f2t, i, j, k, l);
  };
  auto I2 = [&](bool swap, int i, int j, int k, int l) {
    return i2_from(swap ? zm : zn, f1t, f2t, i, j, k, l);
  };

  switch (which) {
    case BreitBlock::b1: {
      // <f| {(s1.d)(s2.d) r}-type kernel |d_k d_l g>
      const HighReal gaunt = -2 * zn * c + 4 * zn * zn * g;
      auto t = [&](int a, int b, int k, int l) {
        const HighReal printed = -I1(false, a, b, k, l) - I2(false, b, a, k, l);
        return delta(a, b) * delta(k, l) * gaunt - half * printed;
      };
      return scaled(contract4(t1212, t, "Breit block 1"), HighReal(-1));
    }
    case BreitBlock::b2:
    case BreitBlock::b3: {
      const HighReal s36 = grad_coulomb_grad(p).delta;
      auto t = [&](int i, int j, int k, int l) {
        const HighReal printed = I1(true, l, k, i, j) + I1(false, i, k, j, l);
        return delta(j, k) * delta(i, l) * s36 + half * printed;
      };
      return which == BreitBlock::b2 ? contract4(t2121, t, "Breit block 2")
                                     : contract4(t1122, t, "Breit block 3");
    }
    case BreitBlock::b4: {
      const HighReal gaunt = -2 * zm * c + 4 * zm * zm * g;
      auto t = [&](int i, int j, int k, int l) {
        const HighReal printed = -I2(true, l, i, j, k) - I1(true, k, l, i, j);
        return delta(k, l) * delta(i, j) * gaunt - half * printed;
      };
      return scaled(contract4(t2112, t, "Breit block 4"), HighReal(-1));
    }
  }
  throw std::invalid_argument("unknown Breit block");
}

SpinBlock breit_block(BreitBlock which, const ExponentPair& p, const HighReal& q1q2,
                      const HighReal& c, const HighReal& m1, const HighReal& m2) {
  return scaled(breit_block_unscaled(which, p), q1q2 / (4 * c * c * m1 * m2));
}

SpinBlock coulomb_ss_unscaled(const ExponentPair& p) {
  static const ChainTable t1212 = make_chain_table({1, 2, 1, 2});
  const Rank4Tensor s37 = gradgrad_coulomb_gradgrad(p);
  return contract4(t1212, s37, "Coulomb (ss, ss) block");
}

SpinBlock coulomb_small_unscaled(const ExponentPair& p, int particle) {
  const Rank2Tensor s36 = grad_coulomb_grad(p);
  Accumulator acc;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      acc.add(spin::sigma(particle, i) * spin::sigma(particle, j), s36(i, j));
  return acc.real("Coulomb small-component block");
}

}  // namespace nopair
