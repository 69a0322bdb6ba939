#include "nopair/nrqed.hpp"

#include <stdexcept>

namespace nopair {

namespace {

void check_unit_charges(const TwoBodySystem& sys) {
  sys.validate();
  if (sys.q1q2 != -1) throw std::invalid_argument("the perturbative formulas assume charges +1 and -1");
}

const HighReal& equal_mass(const TwoBodySystem& sys, const char* what) {
  check_unit_charges(sys);
  if (sys.m1 != sys.m2) throw std::invalid_argument(std::string(what) + " is only known for equal masses");
  return sys.m1;
}

HighReal cube(const HighReal& x) { return x * x * x; }

}  // namespace

HighReal hydrogenic_expectation(HydrogenicKind kind, const HighReal& mu, int n, int l) {
  if (n < 1 || l < 0 || l >= n) throw std::invalid_argument("need n >= 1 and 0 <= l < n");
  if (!(mu > 0)) throw std::invalid_argument("reduced mass must be positive");
  const HighReal nn = n;
  switch (kind) {
    case HydrogenicKind::energy: return -mu / (2 * nn * nn);
    case HydrogenicKind::inv_r: return mu / (nn * nn);
    case HydrogenicKind::inv_r2: return 2 * mu * mu / (cube(nn) * (2 * l + 1));
    case HydrogenicKind::delta3: return l == 0 ? cube(mu) / (pi() * cube(nn)) : HighReal(0);
  }
  throw std::invalid_argument("unknown expectation kind");
}

HighReal hydrogenic_expectation(HydrogenicKind kind, const TwoBodySystem& sys, int n, int l) {
  check_unit_charges(sys);
  return hydrogenic_expectation(kind, sys.reduced_mass(), n, l);
}

HighReal e_nr(const TwoBodySystem& sys) { return hydrogenic_expectation(HydrogenicKind::energy, sys, 1, 0); }

// <p^4> = 5 mu^4 for the ground state.
HighReal e2_mass_velocity(const TwoBodySystem& sys) {
  check_unit_charges(sys);
  const HighReal mu = sys.reduced_mass();
  return -HighReal(5) / 8 * mu * cube(mu) * (1 / cube(sys.m1) + 1 / cube(sys.m2));
}

HighReal e2_darwin(const TwoBodySystem& sys) {
  check_unit_charges(sys);
  return cube(sys.reduced_mass()) / 2 * (1 / (sys.m1 * sys.m1) + 1 / (sys.m2 * sys.m2));
}

HighReal e2_dc(const TwoBodySystem& sys) { return e2_mass_velocity(sys) + e2_darwin(sys); }

HighReal e2_b(const TwoBodySystem& sys) {
  check_unit_charges(sys);
  return -3 * cube(sys.reduced_mass()) / (sys.m1 * sys.m2);
}

HighReal e2_dcb(const TwoBodySystem& sys) { return e2_dc(sys) + e2_b(sys); }

HighReal e3_c02(const TwoBodySystem& sys) {
  check_unit_charges(sys);
  const HighReal& m1 = sys.m1;
  const HighReal& m2 = sys.m2;
  return -2 * cube(sys.reduced_mass()) / (3 * pi()) * (2 / (m1 * m1) + 1 / (m1 * m2) + 2 / (m2 * m2));
}

HighReal e3_c2(const TwoBodySystem& sys, double abs_tolerance) {
  check_unit_charges(sys);
  const HighReal m1 = sys.m1;
  const HighReal m2 = sys.m2;
  const HighReal scale = sys.m_min();
  const HighReal prefactor = -2 * cube(sys.reduced_mass()) / pi();
  // E - m = k^2/(E + m) keeps small k free of cancellation; the k^-2 is
  // absorbed the same way.
  auto in_theta = [&](const HighReal& theta) -> HighReal {
    const HighReal cs = cos(theta);
    if (!(cs > 0)) return 0;
    const HighReal k = scale * tan(theta);
    const HighReal e1 = sqrt(m1 * m1 + k * k);
    const HighReal e2 = sqrt(m2 * m2 + k * k);
    const HighReal f = k * k / ((e1 + m1) * (e2 + m2) * e1 * e2 * (e1 + e2 + m1 + m2));
    return f * scale / (cs * cs);
  };
  QuadratureOptions q;
  q.rel_tolerance = 1e-20;
  q.abs_tolerance = abs_tolerance / static_cast<double>(abs(prefactor));
  return prefactor * integrate(in_theta, HighReal(0), pi() / 2, q).value;
}

HighReal e3_c0(const TwoBodySystem& sys) { return e3_c02(sys) - e3_c2(sys); }

HighReal e3_b_equal_mass(const TwoBodySystem& sys) {
  const HighReal& m = equal_mass(sys, "the a^3 Breit term");
  return m / (2 * pi()) * (1 + pi() / 2);
}

HighReal e3_c1(const TwoBodySystem& sys) {
  check_unit_charges(sys);
  const HighReal& m1 = sys.m1;
  const HighReal& m2 = sys.m2;
  return 2 * cube(sys.reduced_mass()) / (3 * pi()) * (2 / (m1 * m1) - 1 / (m1 * m2) + 2 / (m2 * m2));
}

HighReal e3_c1_infty(const HighReal& m1) {
  if (!(m1 > 0)) throw std::invalid_argument("mass must be positive");
  return 4 * m1 / (3 * pi());
}

HighReal a4log_ps(const TwoBodySystem& sys) { return -equal_mass(sys, "the a^4 ln(a) coefficient") / 16; }

NrqedReport nrqed_report(const TwoBodySystem& sys) {
  NrqedReport r;
  r.mass_ratio = sys.m2 / sys.m1;
  r.e_nr = e_nr(sys);
  r.e2_dc = e2_dc(sys);
  r.e2_b = e2_b(sys);
  r.e2_dcb = r.e2_dc + r.e2_b;
  r.e3_c02 = e3_c02(sys);
  r.e3_c2 = e3_c2(sys);
  r.e3_c0 = r.e3_c02 - r.e3_c2;
  r.e3_c1_infty_limit = e3_c1_infty(sys.m_min());
  if (sys.m1 == sys.m2) {
    r.e3_b = e3_b_equal_mass(sys);
    r.a4log_ps = a4log_ps(sys);
  }
  return r;
}

nlohmann::json report_to_json(const NrqedReport& report, int digits) {
  auto str = [digits](const HighReal& x) { return to_string(x, digits); };
  auto opt = [&](const std::optional<HighReal>& x) { return x ? nlohmann::json(str(*x)) : nlohmann::json(); };
  return {{"m2_over_m1", str(report.mass_ratio)},
          {"e_nr", str(report.e_nr)},
          {"e2_dc", str(report.e2_dc)},
          {"e2_b", str(report.e2_b)},
          {"e2_dcb", str(report.e2_dcb)},
          {"e3_c02", str(report.e3_c02)},
          {"e3_c2", str(report.e3_c2)},
          {"e3_c0", str(report.e3_c0)},
          {"e3_c1_infty", str(report.e3_c1_infty_limit)},
          {"e3_b", opt(report.e3_b)},
          {"a4log", opt(report.a4log_ps)}};
}

}  // namespace nopair
