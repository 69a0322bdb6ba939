#pragma once

// Positive-energy projection by energy cutting and the projected
// Dirac-Coulomb(-Breit) eigenproblem.

#include <string_view>

#include "nopair/hamiltonian.hpp"

namespace nopair {

enum class Model { dc, dcb };

std::string_view to_string(Model model);

/// How the energy cut is enforced. `strict` requires every bare eigenvalue to
/// clear the guard band on its own side of the cut. `count` keeps the top
/// states and checks only the kept ones, tolerating rejected states that rise
/// above the cut; in an equal-mass system very tight exponents push the
/// upper edge of the mixed-sign branch above -m_min c^2 while the count-based
/// classification stays intact.
enum class CutPolicy { strict, count };

std::string_view to_string(CutPolicy policy);
CutPolicy parse_cut_policy(std::string_view text);

/// Metric-orthonormal bare eigenvectors spanning the positive-energy branch.
struct ProjectorBasis {
  SpinChannel channel = SpinChannel::full;
  Matrix columns;   // operator dimension x count
  Vector energies;  // bare eigenvalues of the columns, ascending
  HighReal cut = 0;
  HighReal top_rejected;  // highest discarded bare eigenvalue (-inf if none)
  CutPolicy policy = CutPolicy::strict;
  std::size_t count() const noexcept { return energies.size(); }
};

/// States kept per channel: 4 n_b in the full space, n_b per spin channel.
constexpr std::size_t projector_count(std::size_t n_b, SpinChannel channel) {
  return channel == SpinChannel::full ? 4 * n_b : n_b;
}

/// Relative width of the forbidden band around the cut.
inline constexpr double kCutGuard = 1e-3;

/// Diagonalizes the bare Hamiltonian in the metric and keeps the highest
/// projector_count states. The cut sits at -m_min c^2; AmbiguousCut is thrown
/// when any bare eigenvalue lies within kCutGuard m_min c^2 of it or the kept
/// count disagrees with the threshold (see CutPolicy for the relaxed check).
ProjectorBasis build_projector(const TwoBodySystem& sys, const HamiltonianCache& cache,
                               SpinChannel channel = SpinChannel::full, const EigenOptions& eigen = {},
                               CutPolicy policy = CutPolicy::strict);
ProjectorBasis build_projector(const TwoBodySystem& sys, const BasisSet& basis,
                               SpinChannel channel = SpinChannel::full);

/// The selection step alone: keeps the top `keep` eigenpairs of `bare`, with
/// the cut at -scale and the guard band kCutGuard * scale.
ProjectorBasis select_positive_branch(const EigenDecomposition& bare, std::size_t keep, const HighReal& scale,
                                      SpinChannel channel, CutPolicy policy = CutPolicy::strict);

struct ProjectedSpectrum {
  Model model = Model::dc;
  SpinChannel channel = SpinChannel::full;
  Vector eigenvalues;  // ascending, hartree
  Matrix eigenvectors; // columns, in projector coordinates, orthonormal
  ProjectorBasis projector;
  SymMatrix breit;     // Breit interaction in projector coordinates

  const HighReal& ground() const { return eigenvalues.front(); }
};

/// Solves the projected problem. The ground state of the physical systems
/// here is a spin singlet, which is why that channel is the default.
ProjectedSpectrum solve_projected(const TwoBodySystem& sys, const HamiltonianCache& cache, Model model,
                                  SpinChannel channel = SpinChannel::singlet, const EigenOptions& eigen = {},
                                  CutPolicy policy = CutPolicy::strict);

/// Reuses an already built projector (same system, c and channel).
ProjectedSpectrum solve_projected(const TwoBodySystem& sys, const HamiltonianCache& cache, Model model,
                                  const ProjectorBasis& projector, const EigenOptions& eigen = {});

ProjectedSpectrum solve_projected(const TwoBodySystem& sys, const BasisSet& basis, Model model,
                                  SpinChannel channel = SpinChannel::singlet);

/// Full-space level list from the two spin channels: singlet levels once,
/// triplet levels three times, ascending (4 n_b values).
Vector merged_levels(const ProjectedSpectrum& singlet, const ProjectedSpectrum& triplet);

}  // namespace nopair
