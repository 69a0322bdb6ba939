#include "nopair/system.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <stdexcept>

#include "nopair/errors.hpp"
#include "nopair/integrals.hpp"

namespace nopair {

HighReal default_alpha_inverse() { return HighReal("137.035999084"); }

void TwoBodySystem::validate() const {
  if (!(m1 > 0) || !(m2 > 0)) throw std::invalid_argument("particle masses must be positive");
  if (!(alpha_inverse > 0)) throw std::invalid_argument("alpha_inverse must be positive");
}

TwoBodySystem TwoBodySystem::with_alpha_inverse(const HighReal& a) const {
  TwoBodySystem s = *this;
  s.alpha_inverse = a;
  s.validate();
  return s;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"ps", "mu", "h", "muh", "h10"};
  return names;
}

TwoBodySystem custom_system(const HighReal& m1, const HighReal& m2_over_m1) {
  TwoBodySystem s;
  s.m1 = m1;
  s.m2 = m1 * m2_over_m1;
  s.validate();
  return s;
}

TwoBodySystem preset_system(std::string_view name) {
  TwoBodySystem s;
  if (name == "ps") {
    s = custom_system(HighReal(1), HighReal(1));
  } else if (name == "mu") {
    s = custom_system(HighReal(1), HighReal("206.7682830"));
  } else if (name == "h") {
    s = custom_system(HighReal(1), HighReal("1836.15267343"));
  } else if (name == "muh") {
    // Muon and proton masses directly; their ratio rounds to 8.88024337.
    s.m1 = HighReal("206.7682830");
    s.m2 = HighReal("1836.15267343");
  } else if (name == "h10") {
    s = custom_system(HighReal(1), HighReal("18361.5267343"));
  } else {
    throw std::invalid_argument("unknown system preset '" + std::string(name) + "'");
  }
  s.name = std::string(name);
  return s;
}

bool BasisSet::well_separated(const std::vector<HighReal>& sorted) {
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] - sorted[i - 1] < HighReal(kMinSeparation) * sorted[i]) return false;
  return true;
}

BasisSet::BasisSet(std::vector<HighReal> exponents) : exponents_(std::move(exponents)) {
  for (const auto& z : exponents_)
    if (!(z > 0)) throw NonPositiveExponent("basis exponent " + to_string(z, 12) + " is not positive");
  std::sort(exponents_.begin(), exponents_.end());
  if (!well_separated(exponents_))
    throw std::invalid_argument("basis exponents closer than the 1e-8 relative separation guard");
}

BasisSet BasisSet::scaled(const HighReal& factor) const {
  std::vector<HighReal> z = exponents_;
  for (auto& v : z) v *= factor;
  return BasisSet(std::move(z));
}

NonrelativisticSolution solve_nonrelativistic(const TwoBodySystem& sys, const BasisSet& basis) {
  const std::size_t n = basis.size();
  if (n == 0) throw std::invalid_argument("empty basis");
  const HighReal kinetic = -1 / (2 * sys.reduced_mass());
  SymMatrix h(n), s(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const ExponentPair p(basis[i], basis[j]);
      s.set(i, j, overlap(p));
      h.set(i, j, kinetic * laplacian(p) + sys.q1q2 * coulomb(p));
    }
  EigenPair low = lowest_eigenpair(h, s);
  return {low.value, std::move(low.vector)};
}

Vector nonrelativistic_gradient(const TwoBodySystem& sys, const BasisSet& basis,
                                const NonrelativisticSolution& solution) {
  const std::size_t n = basis.size();
  const HighReal kinetic = -1 / (2 * sys.reduced_mass());
  const auto& c = solution.coefficients;
  const HighReal e = solution.energy;
  Vector grad(n);
  for (std::size_t k = 0; k < n; ++k) {
    const HighReal zk = basis[k];
    HighReal acc = 0;
    for (std::size_t v = 0; v < n; ++v) {
      const ExponentPair p(zk, basis[v]);
      const HighReal a = p.sum();
      const HighReal s = overlap(p);
      const HighReal ds = s * (HighReal(3) / (4 * zk) - HighReal(3) / (2 * a));
      const HighReal vc = coulomb(p);
      const HighReal dv = vc * (HighReal(3) / (4 * zk) - 1 / a);
      const HighReal lap = laplacian(p);
      const HighReal dlap = lap * (HighReal(7) / (4 * zk) - HighReal(5) / (2 * a));
      const HighReal dh = kinetic * dlap + sys.q1q2 * dv;
      acc += c[v] * (dh - e * ds);
    }
    // Chain rule to t = ln zeta.
    grad[k] = 2 * c[k] * acc * zk;
  }
  return grad;
}

void save_exponents(const BasisSet& basis, const std::filesystem::path& path,
                    std::string_view system_name) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write exponent file " + path.string());
  out << "# nopair-qed exponents v1 system=" << system_name << " nb=" << basis.size()
      << " precision=" << kPrecisionDigits << "\n";
  for (const auto& z : basis.exponents()) out << to_string(z) << "\n";
  if (!out) throw std::runtime_error("failed writing exponent file " + path.string());
}

ExponentFile load_exponents(const std::filesystem::path& path, std::optional<std::size_t> expected_nb) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open exponent file " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty exponent file", 1);
  static const std::regex header(
      R"(^#\s*nopair-qed exponents v1 system=(\S+) nb=(\d+) precision=(\d+)\s*$)");
  std::smatch m;
  if (!std::regex_match(line, m, header)) throw ParseError("malformed exponent file header", 1);
  ExponentFile file;
  file.system_name = m[1];
  const std::size_t nb = std::stoul(m[2]);
  file.precision_digits = std::stoi(m[3]);
  if (expected_nb && *expected_nb != nb)
    throw ParseError("header declares nb=" + std::to_string(nb) + " but " +
                         std::to_string(*expected_nb) + " exponents were requested",
                     1);
  std::vector<HighReal> z;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    HighReal v;
    try {
      v = parse_real(line);
    } catch (const std::invalid_argument&) {
      throw ParseError("not a number: '" + line + "'", lineno);
    }
    if (!(v > 0))
      throw NonPositiveExponent("exponent on line " + std::to_string(lineno) + " is not positive");
    z.push_back(v);
  }
  if (z.size() != nb)
    throw ParseError("header declares nb=" + std::to_string(nb) + " but the file lists " +
                         std::to_string(z.size()) + " exponents",
                     lineno);
  try {
    file.basis = BasisSet(std::move(z));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), lineno);
  }
  return file;
}

}  // namespace nopair
