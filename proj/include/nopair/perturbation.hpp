#pragma once

// Breit interaction as a perturbation on the projected Dirac-Coulomb states.

#include "nopair/nopair.hpp"

namespace nopair {

struct BreitCorrections {
  std::size_t state = 0;
  HighReal e_dc;
  HighReal e_pt1;  // E_DC<B>
  HighReal e_pt2;  // E_DCB2
};

/// Gap below which a second-order denominator counts as degenerate.
inline constexpr double kDegenerateGap = 1e-15;

/// E_DC,n plus the expectation value of the projected Breit matrix.
/// Throws IndexOutOfRange, or std::invalid_argument for a DCB spectrum.
HighReal breit_pt1(const ProjectedSpectrum& dc, std::size_t n);
HighReal breit_pt1(const ProjectedSpectrum& dc, const SymMatrix& breit, std::size_t n);

/// Adds the Rayleigh-Schroedinger second-order sum over every other
/// projected state, sum_i |B_in|^2 / (E_n - E_i), so the ground-state shift
/// is never positive. Throws DegenerateDenominator for a coupled state closer
/// than kDegenerateGap.
HighReal breit_pt2(const ProjectedSpectrum& dc, std::size_t n);
HighReal breit_pt2(const ProjectedSpectrum& dc, const SymMatrix& breit, std::size_t n);

BreitCorrections breit_corrections(const ProjectedSpectrum& dc, std::size_t n = 0);

/// Every energy of one table row for the singlet ground state.
struct EnergyRow {
  HighReal e_nr;
  HighReal e_dc;
  HighReal e_pt1;
  HighReal e_pt2;
  HighReal e_dcb;
};

EnergyRow compute_energy_row(const TwoBodySystem& sys, const HamiltonianCache& cache, const EigenOptions& eigen = {},
                             CutPolicy policy = CutPolicy::strict);

}  // namespace nopair
