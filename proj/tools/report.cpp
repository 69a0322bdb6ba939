#include "report.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

namespace nopair::cli {

std::string grouped(const HighReal& value, int decimals) {
  std::string s = value.str(decimals, std::ios::fixed);
  const auto dot = s.find('.');
  if (dot == std::string::npos) return s;
  std::string out = s.substr(0, dot + 1);
  for (std::size_t i = dot + 1, k = 0; i < s.size(); ++i, ++k) {
    if (k > 0 && k % 3 == 0) out += ' ';
    out += s[i];
  }
  return out;
}

std::string brief(const HighReal& value, int significant) {
  return value.str(significant, std::ios::scientific);
}

namespace {

// Twelve significant figures after the leading integer digit, as in the
// energy tables.
int energy_decimals(const HighReal& x) {
  const double a = std::abs(static_cast<double>(x));
  const int int_digits = a >= 1 ? static_cast<int>(std::floor(std::log10(a))) + 1 : 1;
  return std::max(0, 13 - int_digits);
}

const HighReal kPpm = HighReal(1000000);

HighReal rel(const HighReal& a, const HighReal& b) { return (a - b) / abs(b) * kPpm; }

}  // namespace

RelativeImportance relative_importance(const TwoBodySystem& sys, const EnergyRow& row) {
  RelativeImportance r;
  r.dc = rel(row.e_dc, row.e_nr);
  r.pt1 = rel(row.e_pt1, row.e_dc);
  r.pt2 = rel(row.e_pt2, row.e_pt1);
  r.dcb = rel(row.e_dcb, row.e_pt2);
  const HighReal a = sys.alpha();
  r.dc_with_one_pair = rel(row.e_dc + a * a * a * e3_c1(sys), row.e_nr);
  return r;
}

std::vector<CoefficientComparison> compare_coefficients(const TwoBodySystem& sys,
                                                        const std::map<ScanModel, FitResult>& fits) {
  const bool equal_masses = sys.m1 == sys.m2;
  const HighReal a = sys.alpha();
  std::vector<CoefficientComparison> out;
  auto add = [&](ScanModel m, const char* name, int order, const HighReal& fitted, std::optional<HighReal> ref) {
    CoefficientComparison c;
    c.label = std::string(to_string(m)) + " " + name;
    c.order = order;
    c.fitted = fitted;
    c.reference = ref;
    if (ref) c.scaled_difference = pow(a, order) * (*ref - fitted);
    out.push_back(std::move(c));
  };
  const NrqedReport nr = nrqed_report(sys);
  for (const auto& [model, f] : fits) {
    add(model, "eps0", 0, f.eps0, nr.e_nr);
    add(model, "eps2", 2, f.eps2, model == ScanModel::dc ? nr.e2_dc : nr.e2_dcb);
    std::optional<HighReal> e3;
    if (model == ScanModel::dc) e3 = nr.e3_c0;
    if (model == ScanModel::dc_pt1 && equal_masses) e3 = nr.e3_c0 + *nr.e3_b;
    add(model, "eps3", 3, f.eps3, e3);
    if (f.include_log) {
      std::optional<HighReal> e4log;
      if (model == ScanModel::dc && equal_masses) e4log = nr.a4log_ps;
      add(model, "eps4'", 4, f.eps4log, e4log);
    }
  }
  return out;
}

void print_row(std::ostream& out, const TwoBodySystem& sys, std::size_t nb, const EnergyRow& row,
               const std::vector<ScanModel>& breit_columns) {
  out << sys.name << "  n_b = " << nb << "  alpha^-1 = " << sys.alpha_inverse.str(15) << "\n";
  auto line = [&](const char* label, const HighReal& e) {
    out << "  " << std::left << std::setw(8) << label << std::right << grouped(e, energy_decimals(e)) << "\n";
  };
  line("E_nr", row.e_nr);
  line("E_DC", row.e_dc);
  for (ScanModel m : breit_columns) line(std::string(to_string(m)).c_str(), pick(row, m));
}

void print_fit(std::ostream& out, ScanModel model, const FitResult& f) {
  out << to_string(model) << " fit (" << f.points_used << " points" << (f.include_log ? "" : ", no log term")
      << ")\n";
  out << "  eps0   " << grouped(f.eps0, energy_decimals(f.eps0)) << "\n";
  out << "  eps2   " << grouped(f.eps2, 6) << "\n";
  out << "  eps3   " << grouped(f.eps3, 4) << "\n";
  if (f.include_log) out << "  eps4'  " << grouped(f.eps4log, 4) << "\n";
  out << "  eps4   " << grouped(f.eps4, 4) << "\n";
  if (f.eps5 != 0 || f.eps5log != 0)
    out << "  eps5'  " << grouped(f.eps5log, 4) << "\n  eps5   " << grouped(f.eps5, 4) << "\n";
  out << "  rms    " << brief(f.rms_residual) << "\n";
}

void print_comparison(std::ostream& out, const std::vector<CoefficientComparison>& rows) {
  out << std::left << std::setw(14) << "coefficient" << std::setw(24) << "var-fit" << std::setw(24) << "nrQED"
      << "a^n (nrQED - fit)\n";
  for (const auto& c : rows) {
    const int decimals = c.order == 0 ? 12 : c.order == 2 ? 6 : 4;
    out << std::setw(14) << c.label << std::setw(24) << grouped(c.fitted, decimals) << std::setw(24)
        << (c.reference ? grouped(*c.reference, decimals) : std::string("")) << (c.scaled_difference ? brief(*c.scaled_difference) : std::string(""))
        << "\n";
  }
  out << std::right;
}

void print_relative_importance(std::ostream& out, const TwoBodySystem& sys, const RelativeImportance& r) {
  out << "relative importance (ppm), m2/m1 = " << HighReal(sys.m2 / sys.m1).str(12) << "\n";
  out << "  (E_DC - E_nr)/|E_nr|          " << grouped(r.dc, 4) << "\n";
  out << "  (E_DC<B> - E_DC)/|E_DC|       " << grouped(r.pt1, 4) << "\n";
  out << "  (E_DCB2 - E_DC<B>)/|E_DC<B>|  " << grouped(r.pt2, 4) << "\n";
  out << "  (E_DCB - E_DCB2)/|E_DCB2|     " << grouped(r.dcb, 4) << "\n";
  out << "  with one-pair Coulomb term:\n";
  out << "  (E_DC + a^3 E_C1 - E_nr)/|E_nr| " << grouped(r.dc_with_one_pair, 4) << "\n";
}

void print_nrqed(std::ostream& out, const TwoBodySystem& sys, const NrqedReport& r) {
  out << sys.name << "  m2/m1 = " << r.mass_ratio.str(12) << "\n";
  out << "  E_nr      " << grouped(r.e_nr, energy_decimals(r.e_nr)) << "\n";
  out << "  E2_DC     " << grouped(r.e2_dc, 6) << "\n";
  out << "  E2_B      " << grouped(r.e2_b, 6) << "\n";
  out << "  E2_DCB    " << grouped(r.e2_dcb, 6) << "\n";
  out << "  E3_C02    " << grouped(r.e3_c02, 6) << "\n";
  out << "  E3_C2     " << (abs(r.e3_c2) < HighReal("1e-3") ? brief(r.e3_c2) : grouped(r.e3_c2, 7)) << "\n";
  out << "  E3_C0     " << grouped(r.e3_c0, 6) << "\n";
  out << "  E3_C1(inf) " << grouped(r.e3_c1_infty_limit, 6) << "\n";
  if (r.e3_b) out << "  E3_B      " << grouped(*r.e3_b, 6) << "\n";
  if (r.a4log_ps) out << "  A4_log    " << grouped(*r.a4log_ps, 4) << "\n";
}

}  // namespace nopair::cli
