#include "nopair/alphafit.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <iostream>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace nopair {

std::string_view to_string(ScanModel model) {
  switch (model) {
    case ScanModel::dc:
      return "DC";
    case ScanModel::dc_pt1:
      return "DC<B>";
    case ScanModel::dcb_pt2:
      return "DCB2";
    case ScanModel::dcb:
      return "DCB";
  }
  return "?";
}

ScanModel parse_scan_model(std::string_view text) {
  for (ScanModel m : {ScanModel::dc, ScanModel::dc_pt1, ScanModel::dcb_pt2, ScanModel::dcb})
    if (text == to_string(m)) return m;
  if (text == "dc") return ScanModel::dc;
  if (text == "pt1") return ScanModel::dc_pt1;
  if (text == "pt2") return ScanModel::dcb_pt2;
  if (text == "dcb") return ScanModel::dcb;
  throw std::invalid_argument("unknown scan model '" + std::string(text) + "'");
}

HighReal pick(const EnergyRow& row, ScanModel model) {
  switch (model) {
    case ScanModel::dc:
      return row.e_dc;
    case ScanModel::dc_pt1:
      return row.e_pt1;
    case ScanModel::dcb_pt2:
      return row.e_pt2;
    case ScanModel::dcb:
      return row.e_dcb;
  }
  return row.e_dc;
}

std::vector<HighReal> scan_grid(const ScanOptions& options) {
  if (options.step <= 0) throw std::invalid_argument("scan step must be positive");
  if (options.to < options.from) throw std::invalid_argument("empty alpha scan range");
  std::vector<HighReal> grid;
  for (int n = options.from; n <= options.to; n += options.step) {
    const HighReal a = options.centre + n;
    if (!(a > 0)) throw std::invalid_argument("alpha^-1 = " + to_string(a, 12) + " is not positive");
    grid.push_back(a);
  }
  return grid;
}

namespace {

// Evaluates `point` on every grid value, concurrently when asked, and
// rethrows the first failure in grid order.
template <class Point>
std::vector<EnergyRow> scan_rows(const std::vector<HighReal>& grid, const ScanOptions& options, Point point) {
  std::vector<EnergyRow> rows(grid.size());
  std::vector<std::exception_ptr> errors(grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      try {
        rows[i] = point(grid[i]);
        if (options.verbose) std::cerr << "  alpha^-1 = " << to_string(grid[i], 15) << " done\n";
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(grid.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      std::throw_with_nested(ScanPointFailure(grid[i], e.what()));
    }
  }
  return rows;
}

AlphaScan collect(const std::vector<HighReal>& grid, const std::vector<EnergyRow>& rows, ScanModel model) {
  AlphaScan s;
  s.model = model;
  for (std::size_t i = 0; i < grid.size(); ++i) s.points.push_back({grid[i], pick(rows[i], model)});
  return s;
}

}  // namespace

std::map<ScanModel, AlphaScan> run_scan_all(const TwoBodySystem& sys, const HamiltonianCache& cache,
                                            const ScanOptions& options) {
  const std::vector<HighReal> grid = scan_grid(options);
  const auto rows = scan_rows(grid, options, [&](const HighReal& ai) {
    return compute_energy_row(sys.with_alpha_inverse(ai), cache, options.eigen, options.cut);
  });
  std::map<ScanModel, AlphaScan> out;
  for (ScanModel m : {ScanModel::dc, ScanModel::dc_pt1, ScanModel::dcb_pt2, ScanModel::dcb})
    out[m] = collect(grid, rows, m);
  return out;
}

// DC alone skips the Breit matrix work.
AlphaScan run_scan(const TwoBodySystem& sys, const HamiltonianCache& cache, ScanModel model,
                   const ScanOptions& options) {
  if (model != ScanModel::dc) return run_scan_all(sys, cache, options).at(model);
  const std::vector<HighReal> grid = scan_grid(options);
  const auto rows = scan_rows(grid, options, [&](const HighReal& ai) {
    EnergyRow row;
    row.e_dc = solve_projected(sys.with_alpha_inverse(ai), cache, Model::dc, SpinChannel::singlet, options.eigen,
                               options.cut)
                   .ground();
    return row;
  });
  return collect(grid, rows, model);
}

AlphaScan run_scan(const TwoBodySystem& sys, const BasisSet& basis, ScanModel model, int n_from, int n_to) {
  ScanOptions options;
  options.from = n_from;
  options.to = n_to;
  options.step = 1;
  return run_scan(sys, HamiltonianCache(basis), model, options);
}

namespace {

std::vector<HighReal> row_of(const HighReal& a, const FitOptions& options) {
  const HighReal a2 = a * a, a3 = a2 * a, a4 = a3 * a, la = log(a);
  std::vector<HighReal> r{1, a2, a3};
  if (options.include_log) r.push_back(a4 * la);
  r.push_back(a4);
  if (options.include_fifth_order) {
    r.push_back(a4 * a * la);
    r.push_back(a4 * a);
  }
  return r;
}

}  // namespace

FitResult fit(const AlphaScan& scan, const FitOptions& options) {
  const std::size_t k = row_of(HighReal("0.01"), options).size();
  const std::size_t m = scan.points.size();
  if (m < k)
    throw std::invalid_argument("fit needs at least " + std::to_string(k) + " points, got " + std::to_string(m));
  Matrix design(m, k);
  Vector rhs(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto r = row_of(1 / scan.points[i].alpha_inverse, options);
    for (std::size_t j = 0; j < k; ++j) design(i, j) = r[j];
    rhs[i] = scan.points[i].energy;
  }
  const LeastSquaresResult ls = least_squares(design, rhs);
  const Vector& c = ls.coefficients;
  FitResult out;
  std::size_t j = 0;
  out.eps0 = c[j++];
  out.eps2 = c[j++];
  out.eps3 = c[j++];
  out.eps4log = options.include_log ? c[j++] : HighReal(0);
  out.eps4 = c[j++];
  out.eps5log = options.include_fifth_order ? c[j++] : HighReal(0);
  out.eps5 = options.include_fifth_order ? c[j++] : HighReal(0);
  out.include_log = options.include_log;
  out.points_used = m;
  HighReal ss = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const HighReal r = rhs[i] - evaluate(out, 1 / scan.points[i].alpha_inverse);
    ss += r * r;
  }
  out.rms_residual = sqrt(ss / m);
  return out;
}

FitResult fit(const AlphaScan& scan, bool include_log) {
  FitOptions options;
  options.include_log = include_log;
  return fit(scan, options);
}

HighReal evaluate(const FitResult& f, const HighReal& a) {
  const HighReal a2 = a * a, a4 = a2 * a2, la = log(a);
  return f.eps0 + a2 * f.eps2 + a2 * a * f.eps3 + a4 * la * f.eps4log + a4 * f.eps4 + a4 * a * la * f.eps5log +
         a4 * a * f.eps5;
}

void write_scan_csv(const std::vector<const AlphaScan*>& scans, std::ostream& out) {
  out << "alpha_inverse,alpha,model,energy_hartree\n";
  for (const AlphaScan* s : scans)
    for (const auto& p : s->points)
      out << to_string(p.alpha_inverse) << ',' << to_string(1 / p.alpha_inverse) << ',' << to_string(s->model)
          << ',' << to_string(p.energy) << '\n';
}

void write_scan_csv(const AlphaScan& scan, std::ostream& out) { write_scan_csv({&scan}, out); }

nlohmann::json fit_to_json(const FitResult& f) {
  nlohmann::json j;
  j["eps0"] = to_string(f.eps0);
  j["eps2"] = to_string(f.eps2);
  j["eps3"] = to_string(f.eps3);
  j["eps4log"] = f.include_log ? nlohmann::json(to_string(f.eps4log)) : nlohmann::json(nullptr);
  j["eps4"] = to_string(f.eps4);
  j["rms_residual"] = to_string(f.rms_residual);
  j["points_used"] = f.points_used;
  j["include_log"] = f.include_log;
  return j;
}

}  // namespace nopair
