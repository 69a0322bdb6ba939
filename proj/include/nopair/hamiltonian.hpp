#pragma once

// Kinetically balanced operator matrices of the two-particle problem.
//
// Rows and columns are ordered spinor component slowest (ll, ls, sl, ss),
// then two-particle spin (2 s1 + s2, up first), then the spatial basis index.
// Every spin block is rotationally invariant, i.e. of the form a + b s1.s2,
// so the problem also splits exactly into a singlet and a (threefold)
// triplet channel of 4 n_b functions each.

#include <array>
#include <filesystem>
#include <string_view>
#include <vector>

#include "nopair/integrals.hpp"
#include "nopair/linalg.hpp"
#include "nopair/system.hpp"

namespace nopair {

enum class SpinChannel { full, singlet, triplet };

std::string_view to_string(SpinChannel channel);

/// Number of spinor components times spin functions per spatial function.
constexpr std::size_t channel_width(SpinChannel channel) { return channel == SpinChannel::full ? 16 : 4; }

/// Matrix dimension for n_b spatial functions.
constexpr std::size_t operator_dimension(std::size_t n_b, SpinChannel channel) {
  return channel_width(channel) * n_b;
}

/// Singlet and triplet values a - 3b and a + b of a block a + b s1.s2.
HighReal singlet_value(const SpinBlock& block);
HighReal triplet_value(const SpinBlock& block);

/// Spatial and spin integrals for one basis. They do not depend on the
/// masses, charges or c, so one cache serves a whole alpha scan.
class HamiltonianCache {
public:
  /// Computes all ordered pairs, over `threads` worker threads (0 = hardware).
  explicit HamiltonianCache(const BasisSet& basis, unsigned threads = 1);

  const BasisSet& basis() const noexcept { return basis_; }
  std::size_t size() const noexcept { return basis_.size(); }

  struct Pair {
    HighReal overlap;
    HighReal coulomb;
    HighReal p2;           // <f|p^2|g> = -<f|lap|g>
    HighReal p4;           // <f|p^4|g>
    HighReal small[2];     // (s_n.p) 1/r (s_n.p), spin independent, particle 1 and 2
    SpinBlock small_small; // (s1.p)(s2.p) 1/r (s1.p)(s2.p)
    std::array<SpinBlock, 4> breit;  // unscaled b1..b4
  };

  const Pair& pair(std::size_t mu, std::size_t nu) const { return pairs_[mu * size() + nu]; }

private:
  BasisSet basis_;
  std::vector<Pair> pairs_;
};

/// Metric of the kinetically balanced basis; positive definite.
SymMatrix assemble_metric(const TwoBodySystem& sys, const HamiltonianCache& cache,
                          SpinChannel channel = SpinChannel::full);

/// Non-interacting part, including the -2 m c^2 shifts of the small components.
SymMatrix assemble_bare(const TwoBodySystem& sys, const HamiltonianCache& cache,
                        SpinChannel channel = SpinChannel::full);

/// Instantaneous Coulomb interaction in every component block.
SymMatrix assemble_coulomb(const TwoBodySystem& sys, const HamiltonianCache& cache,
                           SpinChannel channel = SpinChannel::full);

/// Breit interaction on the anti-diagonal component blocks.
SymMatrix assemble_breit(const TwoBodySystem& sys, const HamiltonianCache& cache,
                         SpinChannel channel = SpinChannel::full);

/// Convenience overloads that build a throwaway cache.
SymMatrix assemble_metric(const TwoBodySystem& sys, const BasisSet& basis, SpinChannel channel = SpinChannel::full);
SymMatrix assemble_bare(const TwoBodySystem& sys, const BasisSet& basis, SpinChannel channel = SpinChannel::full);
SymMatrix assemble_coulomb(const TwoBodySystem& sys, const BasisSet& basis, SpinChannel channel = SpinChannel::full);
SymMatrix assemble_breit(const TwoBodySystem& sys, const BasisSet& basis, SpinChannel channel = SpinChannel::full);

/// Relative asymmetry max|M - M^T| / max|M| tolerated before symmetrizing.
inline constexpr double kSymmetryTolerance = 1e-25;

/// Text dump, one nonzero `row col value` line per entry of the full square
/// matrix, values at round-trip precision.
void write_triplets(const SymMatrix& m, const std::filesystem::path& path);

}  // namespace nopair
