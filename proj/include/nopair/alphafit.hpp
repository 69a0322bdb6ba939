#pragma once

// Energies on a grid of fine-structure constants and their least-squares
// expansion F(alpha) = e0 + a^2 e2 + a^3 e3 + a^4 ln(a) e4' + a^4 e4.

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "nopair/errors.hpp"
#include "nopair/hamiltonian.hpp"
#include "nopair/perturbation.hpp"

namespace nopair {

/// Which energy of a row is scanned.
enum class ScanModel { dc, dc_pt1, dcb_pt2, dcb };

/// "DC", "DC<B>", "DCB2", "DCB".
std::string_view to_string(ScanModel model);
ScanModel parse_scan_model(std::string_view text);
HighReal pick(const EnergyRow& row, ScanModel model);

struct ScanPoint {
  HighReal alpha_inverse;
  HighReal energy;
};

struct AlphaScan {
  ScanModel model = ScanModel::dc;
  std::vector<ScanPoint> points;  // in grid order
};

struct ScanOptions {
  /// alpha^-1 = default + n for n = from, from + step, ..., <= to.
  int from = -50;
  int to = 50;
  int step = 5;
  HighReal centre = default_alpha_inverse();
  EigenOptions eigen;
  CutPolicy cut = CutPolicy::strict;
  unsigned threads = 1;
  bool verbose = false;
};

/// The alpha^-1 grid of a scan. Throws std::invalid_argument for an empty or
/// non-positive grid.
std::vector<HighReal> scan_grid(const ScanOptions& options);

/// A point of the scan failed; the original error is nested.
class ScanPointFailure : public NumericalError {
public:
  ScanPointFailure(const HighReal& alpha_inverse, const std::string& what)
      : NumericalError("at alpha^-1 = " + to_string(alpha_inverse, 15) + ": " + what), alpha_inverse_(alpha_inverse) {}
  const HighReal& alpha_inverse() const noexcept { return alpha_inverse_; }

private:
  HighReal alpha_inverse_;
};

/// One pass over the grid yields all four models. Points run concurrently
/// when threads > 1; ordering is always the grid order.
std::map<ScanModel, AlphaScan> run_scan_all(const TwoBodySystem& sys, const HamiltonianCache& cache,
                                            const ScanOptions& options = {});

AlphaScan run_scan(const TwoBodySystem& sys, const HamiltonianCache& cache, ScanModel model,
                   const ScanOptions& options = {});

/// n_from..n_to in steps of one around the default alpha^-1.
AlphaScan run_scan(const TwoBodySystem& sys, const BasisSet& basis, ScanModel model, int n_from, int n_to);

struct FitOptions {
  bool include_log = true;
  /// Extra a^5 and a^5 ln(a) columns, for checking truncation stability.
  bool include_fifth_order = false;
};

struct FitResult {
  HighReal eps0, eps2, eps3, eps4log, eps4;
  HighReal eps5log, eps5;  // zero unless fitted
  HighReal rms_residual;
  std::size_t points_used = 0;
  bool include_log = true;
};

/// Unweighted least squares by Householder QR. Throws std::invalid_argument
/// for too few points and RankDeficient for a degenerate grid.
FitResult fit(const AlphaScan& scan, const FitOptions& options = {});
FitResult fit(const AlphaScan& scan, bool include_log);

/// Model value at alpha.
HighReal evaluate(const FitResult& fit, const HighReal& alpha);

/// CSV with header alpha_inverse,alpha,model,energy_hartree.
void write_scan_csv(const AlphaScan& scan, std::ostream& out);
void write_scan_csv(const std::vector<const AlphaScan*>& scans, std::ostream& out);

/// Coefficients as decimal strings at full precision.
nlohmann::json fit_to_json(const FitResult& fit);

}  // namespace nopair
