#pragma once

// Human-readable tables: energy rows, fitted coefficients against the
// perturbative values, and relative sizes of the corrections.

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "nopair/alphafit.hpp"
#include "nopair/nrqed.hpp"
#include "nopair/perturbation.hpp"

namespace nopair::cli {

/// Fixed-point text with the fractional digits grouped in threes,
/// e.g. -0.249 997 552 780.
std::string grouped(const HighReal& value, int decimals);

/// Short scientific form for small differences, e.g. -4.5e-12.
std::string brief(const HighReal& value, int significant = 2);

/// (E_DC - E_nr)/|E_nr|, (E_DC<B> - E_DC)/|E_DC|, (E_DCB2 - E_DC<B>)/|E_DC<B>|,
/// (E_DCB - E_DCB2)/|E_DCB2|, all in ppm.
struct RelativeImportance {
  HighReal dc, pt1, pt2, dcb;
  /// (E_DC + a^3 E_C1 - E_nr)/|E_nr| in ppm, adding the one-pair Coulomb term.
  HighReal dc_with_one_pair;
};

RelativeImportance relative_importance(const TwoBodySystem& sys, const EnergyRow& row);

/// One block of the comparison: fitted coefficient, perturbative value when
/// known, and alpha^n (nrQED - fitted).
struct CoefficientComparison {
  std::string label;  // e.g. "DC eps3"
  int order = 0;      // n of alpha^n
  HighReal fitted;
  std::optional<HighReal> reference;
  std::optional<HighReal> scaled_difference;
};

std::vector<CoefficientComparison> compare_coefficients(const TwoBodySystem& sys,
                                                        const std::map<ScanModel, FitResult>& fits);

void print_row(std::ostream& out, const TwoBodySystem& sys, std::size_t nb, const EnergyRow& row,
               const std::vector<ScanModel>& breit_columns);
void print_fit(std::ostream& out, ScanModel model, const FitResult& fit);
void print_comparison(std::ostream& out, const std::vector<CoefficientComparison>& rows);
void print_relative_importance(std::ostream& out, const TwoBodySystem& sys, const RelativeImportance& r);
void print_nrqed(std::ostream& out, const TwoBodySystem& sys, const NrqedReport& r);

}  // namespace nopair::cli
