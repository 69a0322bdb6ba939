#pragma once

// Closed-form matrix elements between normalized spherical Gaussians
// f(r) = N exp(-zeta r^2), N = (2 zeta / pi)^{3/4}.

#include <array>

#include "nopair/precision.hpp"

namespace nopair {

struct ExponentPair {
  HighReal zeta_mu;
  HighReal zeta_nu;

  ExponentPair(HighReal mu, HighReal nu);  // throws NonPositiveExponent

  HighReal sum() const { return zeta_mu + zeta_nu; }
  HighReal norm_mu() const;
  HighReal norm_nu() const;
  ExponentPair swapped() const { return {zeta_nu, zeta_mu}; }
};

/// c * delta_ij.
struct Rank2Tensor {
  HighReal delta;
  HighReal operator()(int i, int j) const { return i == j ? delta : HighReal(0); }
};

/// General isotropic rank-4 tensor
/// a * d_ij d_kl + b * d_ik d_jl + c * d_il d_jk.
struct Rank4Tensor {
  HighReal ij_kl;
  HighReal ik_jl;
  HighReal il_jk;

  /// Coefficient multiplying the fully symmetric three-delta combination, when
  /// the tensor has that form.
  static Rank4Tensor symmetric(const HighReal& c) { return {c, c, c}; }

  HighReal operator()(int i, int j, int k, int l) const {
    HighReal v = 0;
    if (i == j && k == l) v += ij_kl;
    if (i == k && j == l) v += ik_jl;
    if (i == l && j == k) v += il_jk;
    return v;
  }
};

HighReal overlap(const ExponentPair& p);
HighReal coulomb(const ExponentPair& p);     // <f|1/r|g>
HighReal laplacian(const ExponentPair& p);   // <f|lap|g>
HighReal biharmonic(const ExponentPair& p);  // <f|lap lap|g>

Rank2Tensor grad_coulomb_grad(const ExponentPair& p);          // <d_i f|1/r|d_j g>
Rank4Tensor gradgrad_coulomb_gradgrad(const ExponentPair& p);  // <d_i d_j f|1/r|d_k d_l g>

Rank2Tensor f1(const ExponentPair& p);  // int r_i r_j / r f g
Rank4Tensor f2(const ExponentPair& p);  // int r_i r_j r_k r_l / r f g

/// int (d_i f_mu) (r_j/r) (d_k d_l f_nu). Not symmetric under mu <-> nu.
HighReal i1(const ExponentPair& p, int i, int j, int k, int l);
/// int f_mu (r_i/r) (d_j d_k d_l f_nu).
HighReal i2(const ExponentPair& p, int i, int j, int k, int l);

/// Real 4x4 matrix over the two-spin product space, row index 2*s1 + s2 with
/// spin-up first.
using SpinBlock = std::array<std::array<HighReal, 4>, 4>;

SpinBlock spin_identity(const HighReal& scale = HighReal(1));

enum class BreitBlock { b1, b2, b3, b4 };

/// Spin-contracted Breit coupling between spinor components, without the
/// q1q2/(4 c^2 m1 m2) factor but including its block sign. b1 couples
/// (ll, ss), b2 (ls, sl), b3 (sl, ls) and b4 (ss, ll).
SpinBlock breit_block_unscaled(BreitBlock which, const ExponentPair& p);

/// The same block with the full q1q2/(4 c^2 m1 m2) prefactor.
SpinBlock breit_block(BreitBlock which, const ExponentPair& p, const HighReal& q1q2,
                      const HighReal& c, const HighReal& m1, const HighReal& m2);

/// sigma_1 sigma_2 sigma_1 sigma_2 contraction of the Coulomb double-gradient
/// tensor, the spin-dependent part of the (ss, ss) block without prefactors.
SpinBlock coulomb_ss_unscaled(const ExponentPair& p);

/// (sigma_n . grad) 1/r (sigma_n . grad) contraction for either particle; the
/// result is spin independent.
SpinBlock coulomb_small_unscaled(const ExponentPair& p, int particle);

}  // namespace nopair
