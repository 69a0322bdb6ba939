#include "nopair/nopair.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "nopair/errors.hpp"

namespace nopair {

std::string_view to_string(Model model) { return model == Model::dc ? "DC" : "DCB"; }

std::string_view to_string(CutPolicy policy) { return policy == CutPolicy::strict ? "strict" : "count"; }

CutPolicy parse_cut_policy(std::string_view text) {
  if (text == "strict") return CutPolicy::strict;
  if (text == "count") return CutPolicy::count;
  throw std::invalid_argument("unknown cut policy '" + std::string(text) + "' (strict or count)");
}

ProjectorBasis select_positive_branch(const EigenDecomposition& dec, std::size_t keep, const HighReal& scale,
                                      SpinChannel channel, CutPolicy policy) {
  const std::size_t dim = dec.values.size();
  if (keep > dim) throw std::invalid_argument("cannot keep more states than the problem has");
  ProjectorBasis out;
  out.channel = channel;
  out.policy = policy;
  out.cut = -scale;
  out.top_rejected = keep < dim ? dec.values[dim - keep - 1] : -std::numeric_limits<HighReal>::infinity();
  const std::size_t first_checked = policy == CutPolicy::strict ? 0 : dim - keep;
  for (std::size_t i = first_checked; i < dim; ++i) {
    const HighReal& e = dec.values[i];
    if (abs(e - out.cut) < HighReal(kCutGuard) * scale)
      throw AmbiguousCut("bare eigenvalue " + to_string(e, 12) + " lies within the guard band of " +
                         to_string(out.cut, 12));
    const bool kept = i >= dim - keep;
    if (kept != (e > out.cut))
      throw AmbiguousCut("state " + std::to_string(i) + " at " + to_string(e, 12) + " falls on the wrong side");
  }
  out.columns = Matrix(dim, keep);
  out.energies.assign(dec.values.end() - static_cast<std::ptrdiff_t>(keep), dec.values.end());
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t k = 0; k < keep; ++k) out.columns(r, k) = dec.vectors(r, dim - keep + k);
  return out;
}

ProjectorBasis build_projector(const TwoBodySystem& sys, const HamiltonianCache& cache, SpinChannel channel,
                               const EigenOptions& eigen, CutPolicy policy) {
  const SymMatrix metric = assemble_metric(sys, cache, channel);
  const SymMatrix bare = assemble_bare(sys, cache, channel);
  return select_positive_branch(geneig_sym(bare, metric, eigen), projector_count(cache.size(), channel),
                                sys.m_min() * sys.c() * sys.c(), channel, policy);
}

ProjectorBasis build_projector(const TwoBodySystem& sys, const BasisSet& basis, SpinChannel channel) {
  return build_projector(sys, HamiltonianCache(basis), channel);
}

ProjectedSpectrum solve_projected(const TwoBodySystem& sys, const HamiltonianCache& cache, Model model,
                                  const ProjectorBasis& projector, const EigenOptions& eigen) {
  const SpinChannel channel = projector.channel;
  ProjectedSpectrum out;
  out.model = model;
  out.channel = channel;
  out.breit = congruence(assemble_breit(sys, cache, channel), projector.columns);
  SymMatrix h = congruence(assemble_coulomb(sys, cache, channel), projector.columns);
  for (std::size_t i = 0; i < projector.count(); ++i) h.add(i, i, projector.energies[i]);
  if (model == Model::dcb) h += out.breit;
  EigenDecomposition dec = eig_sym(h, eigen);
  out.eigenvalues = std::move(dec.values);
  out.eigenvectors = std::move(dec.vectors);
  out.projector = projector;
  return out;
}

ProjectedSpectrum solve_projected(const TwoBodySystem& sys, const HamiltonianCache& cache, Model model,
                                  SpinChannel channel, const EigenOptions& eigen, CutPolicy policy) {
  return solve_projected(sys, cache, model, build_projector(sys, cache, channel, eigen, policy), eigen);
}

ProjectedSpectrum solve_projected(const TwoBodySystem& sys, const BasisSet& basis, Model model, SpinChannel channel) {
  return solve_projected(sys, HamiltonianCache(basis), model, channel);
}

Vector merged_levels(const ProjectedSpectrum& singlet, const ProjectedSpectrum& triplet) {
  if (singlet.channel != SpinChannel::singlet || triplet.channel != SpinChannel::triplet)
    throw std::invalid_argument("merged_levels needs a singlet and a triplet spectrum");
  Vector out = singlet.eigenvalues;
  for (int k = 0; k < 3; ++k) out.insert(out.end(), triplet.eigenvalues.begin(), triplet.eigenvalues.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace nopair
