#pragma once

// Perturbative reference values for the 1 1S state of a two-body Coulomb
// system: E = E0 + a^2 E2 + a^3 E3 + ..., coefficients in hartree with the
// masses in electron-mass units.

#include <optional>

#include <json.hpp>

#include "nopair/quadrature.hpp"
#include "nopair/system.hpp"

namespace nopair {

/// Hydrogenic quantities with reduced mass mu and unit charges.
enum class HydrogenicKind { energy, inv_r, inv_r2, delta3 };

/// <n l| . |n l> for kind; energy is -mu/(2 n^2). Throws std::invalid_argument
/// unless n >= 1 and 0 <= l < n.
HighReal hydrogenic_expectation(HydrogenicKind kind, const HighReal& mu, int n, int l);
HighReal hydrogenic_expectation(HydrogenicKind kind, const TwoBodySystem& sys, int n, int l);

HighReal e_nr(const TwoBodySystem& sys);

/// Mass-velocity and Darwin parts of the Dirac-Coulomb a^2 term.
HighReal e2_mass_velocity(const TwoBodySystem& sys);
HighReal e2_darwin(const TwoBodySystem& sys);
HighReal e2_dc(const TwoBodySystem& sys);

/// Orbit-orbit plus spin-spin contact term, -3 mu^3/(m1 m2).
HighReal e2_b(const TwoBodySystem& sys);
HighReal e2_dcb(const TwoBodySystem& sys);

/// No-pair plus two-pair Coulomb a^3 term, closed form.
HighReal e3_c02(const TwoBodySystem& sys);

/// Two-pair Coulomb a^3 term, by quadrature over k = m_min tan(theta) of
///   (E1 - m1)(E2 - m2) / (E1 E2 k^2 (E1 + E2 + m1 + m2)),  Ei = sqrt(mi^2 + k^2).
/// The default tolerance is 1e-10 absolute. Throws QuadratureNotConverged.
HighReal e3_c2(const TwoBodySystem& sys, double abs_tolerance = 1e-10);

/// No-pair Coulomb a^3 term, e3_c02 - e3_c2.
HighReal e3_c0(const TwoBodySystem& sys);

/// Single Breit exchange with the Coulomb ladder at a^3, known only for equal
/// masses: (m/2pi)(1 + pi/2). Throws std::invalid_argument otherwise.
HighReal e3_b_equal_mass(const TwoBodySystem& sys);

/// One-pair Coulomb a^3 term and its infinite-m2 limit 4 m1/(3 pi).
HighReal e3_c1(const TwoBodySystem& sys);
HighReal e3_c1_infty(const HighReal& m1);

/// Coulomb a^4 ln(a) coefficient of an equal-mass system, -m/16.
/// Throws std::invalid_argument for unequal masses.
HighReal a4log_ps(const TwoBodySystem& sys);

struct NrqedReport {
  HighReal mass_ratio;  // m2/m1
  HighReal e_nr, e2_dc, e2_b, e2_dcb, e3_c02, e3_c2, e3_c0;
  HighReal e3_c1_infty_limit;  // lighter particle bound to an infinitely heavy one
  std::optional<HighReal> e3_b;      // equal masses only
  std::optional<HighReal> a4log_ps;  // equal masses only
};

NrqedReport nrqed_report(const TwoBodySystem& sys);

/// Decimal strings; absent fields are null.
nlohmann::json report_to_json(const NrqedReport& report, int digits = 20);

}  // namespace nopair
