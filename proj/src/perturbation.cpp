#include "nopair/perturbation.hpp"

#include <stdexcept>

#include "nopair/errors.hpp"

namespace nopair {

namespace {

void check(const ProjectedSpectrum& dc, const SymMatrix& breit, std::size_t n) {
  if (dc.model != Model::dc) throw std::invalid_argument("Breit perturbation theory needs a DC spectrum");
  if (breit.dim() != dc.eigenvalues.size())
    throw std::invalid_argument("Breit matrix does not match the projected space");
  if (n >= dc.eigenvalues.size())
    throw IndexOutOfRange("state " + std::to_string(n) + " of " + std::to_string(dc.eigenvalues.size()));
}

// B y_n for the n-th eigenvector.
Vector breit_times_state(const ProjectedSpectrum& dc, const SymMatrix& breit, std::size_t n) {
  const std::size_t m = dc.eigenvalues.size();
  const Vector y = dc.eigenvectors.column(n);
  Vector out(m);
  for (std::size_t i = 0; i < m; ++i) {
    HighReal acc = 0;
    for (std::size_t j = 0; j < m; ++j) acc += breit(i, j) * y[j];
    out[i] = acc;
  }
  return out;
}

}  // namespace

HighReal breit_pt1(const ProjectedSpectrum& dc, const SymMatrix& breit, std::size_t n) {
  check(dc, breit, n);
  const Vector y = dc.eigenvectors.column(n);
  return dc.eigenvalues[n] + dot(y, breit_times_state(dc, breit, n)) / dot(y, y);
}

HighReal breit_pt1(const ProjectedSpectrum& dc, std::size_t n) { return breit_pt1(dc, dc.breit, n); }

HighReal breit_pt2(const ProjectedSpectrum& dc, const SymMatrix& breit, std::size_t n) {
  const HighReal pt1 = breit_pt1(dc, breit, n);
  const std::size_t m = dc.eigenvalues.size();
  const Vector by = breit_times_state(dc, breit, n);
  const HighReal negligible = 100 * epsilon() * breit.max_abs();
  HighReal sum = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (i == n) continue;
    const HighReal coupling = dot(dc.eigenvectors.column(i), by);
    const HighReal gap = dc.eigenvalues[n] - dc.eigenvalues[i];
    if (abs(gap) < HighReal(kDegenerateGap)) {
      if (abs(coupling) > negligible) throw DegenerateDenominator(i);
      continue;
    }
    sum += coupling * coupling / gap;
  }
  return pt1 + sum;
}

HighReal breit_pt2(const ProjectedSpectrum& dc, std::size_t n) { return breit_pt2(dc, dc.breit, n); }

BreitCorrections breit_corrections(const ProjectedSpectrum& dc, std::size_t n) {
  return {n, dc.eigenvalues.at(n), breit_pt1(dc, n), breit_pt2(dc, n)};
}

EnergyRow compute_energy_row(const TwoBodySystem& sys, const HamiltonianCache& cache, const EigenOptions& eigen,
                             CutPolicy policy) {
  EnergyRow row;
  row.e_nr = solve_nonrelativistic(sys, cache.basis()).energy;
  const ProjectorBasis projector = build_projector(sys, cache, SpinChannel::singlet, eigen, policy);
  const ProjectedSpectrum dc = solve_projected(sys, cache, Model::dc, projector, eigen);
  const auto pt = breit_corrections(dc, 0);
  row.e_dc = pt.e_dc;
  row.e_pt1 = pt.e_pt1;
  row.e_pt2 = pt.e_pt2;
  row.e_dcb = solve_projected(sys, cache, Model::dcb, projector, eigen).ground();
  return row;
}

}  // namespace nopair
