#pragma once

// Two-body system definitions, the spherical Gaussian basis and the
// nonrelativistic reference problem used to optimize it.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nopair/linalg.hpp"
#include "nopair/precision.hpp"

namespace nopair {

/// CODATA 2018 inverse fine-structure constant.
HighReal default_alpha_inverse();

/// Two particles of masses m1, m2 (electron masses) and charge product q1q2,
/// in hartree atomic units where c = 1/alpha.
struct TwoBodySystem {
  std::string name = "custom";
  HighReal m1 = 1;
  HighReal m2 = 1;
  HighReal q1q2 = -1;
  HighReal alpha_inverse = default_alpha_inverse();

  HighReal c() const { return alpha_inverse; }
  HighReal alpha() const { return 1 / alpha_inverse; }
  HighReal reduced_mass() const { return m1 * m2 / (m1 + m2); }
  HighReal m_min() const { return m1 < m2 ? m1 : m2; }

  /// Throws std::invalid_argument for non-positive masses or alpha.
  void validate() const;

  TwoBodySystem with_alpha_inverse(const HighReal& a) const;
};

/// Named presets: ps, mu, h, muh, h10. Throws std::invalid_argument otherwise.
TwoBodySystem preset_system(std::string_view name);

/// m1 and m2 = ratio * m1.
TwoBodySystem custom_system(const HighReal& m1, const HighReal& m2_over_m1);

/// Known preset names, in table order.
const std::vector<std::string>& preset_names();

/// Ascending, strictly positive Gaussian exponents.
class BasisSet {
public:
  /// Minimum relative separation between neighbouring exponents.
  static constexpr double kMinSeparation = 1e-8;

  BasisSet() = default;
  /// Sorts, then validates. Throws NonPositiveExponent or std::invalid_argument
  /// for near-duplicates.
  explicit BasisSet(std::vector<HighReal> exponents);

  std::size_t size() const noexcept { return exponents_.size(); }
  const HighReal& operator[](std::size_t i) const { return exponents_[i]; }
  const std::vector<HighReal>& exponents() const noexcept { return exponents_; }

  /// Every exponent multiplied by `factor` (> 0).
  BasisSet scaled(const HighReal& factor) const;

  /// True when the exponents satisfy the separation guard.
  static bool well_separated(const std::vector<HighReal>& sorted);

private:
  std::vector<HighReal> exponents_;
};

struct NonrelativisticSolution {
  HighReal energy;
  Vector coefficients;  // overlap-normalized
};

/// Lowest eigenpair of p^2/(2 mu) + q1q2/r in the basis.
NonrelativisticSolution solve_nonrelativistic(const TwoBodySystem& sys, const BasisSet& basis);

/// dE/d(ln zeta_k) of the ground state, by Hellmann-Feynman.
Vector nonrelativistic_gradient(const TwoBodySystem& sys, const BasisSet& basis,
                                const NonrelativisticSolution& solution);

struct OptimizerOptions {
  /// Stop once a full coordinate cycle lowers the energy by less than this (hartree).
  double target = 1e-12;
  std::size_t max_cycles = 40;
  std::size_t max_quasi_newton_iterations = 5000;
  /// Progress lines on stderr.
  bool verbose = false;
};

struct OptimizationResult {
  BasisSet basis;
  HighReal energy;
  std::size_t quasi_newton_iterations = 0;
  std::size_t cycles = 0;
  /// The last cycle gained less than the target while some coordinate still
  /// moved appreciably: a flat valley rather than a converged minimum.
  bool stalled = false;
  std::string note;
};

/// Minimizes the nonrelativistic ground-state energy over the exponents.
/// Deterministic for fixed inputs.
OptimizationResult optimize_exponents(const TwoBodySystem& sys, std::size_t n_b,
                                      const OptimizerOptions& options = {});

/// Refines an existing basis with the same procedure (no grid scan).
OptimizationResult refine_exponents(const TwoBodySystem& sys, const BasisSet& start,
                                    const OptimizerOptions& options = {});

/// Exponent file: a header line
///   # nopair-qed exponents v1 system=<name> nb=<N> precision=<digits>
/// then one exponent per line at full precision.
void save_exponents(const BasisSet& basis, const std::filesystem::path& path,
                    std::string_view system_name);

struct ExponentFile {
  BasisSet basis;
  std::string system_name;
  int precision_digits = 0;
};

/// Throws ParseError (with line number) or NonPositiveExponent. When
/// expected_nb is given the header must agree with it.
ExponentFile load_exponents(const std::filesystem::path& path,
                            std::optional<std::size_t> expected_nb = std::nullopt);

}  // namespace nopair
