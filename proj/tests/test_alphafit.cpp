#include <doctest.h>

#include <sstream>

#include "nopair/alphafit.hpp"
#include "test_support.hpp"

using namespace nopair;
using nopair::testing::rel_diff;
using nopair::testing::to_double;

namespace {

struct Coefficients {
  HighReal e0 = HighReal("-0.2499999999194");
  HighReal e2 = HighReal("0.046879");
  HighReal e3 = HighReal("-0.1303");
  HighReal e4log = HighReal("-0.0634");
  HighReal e4 = HighReal("0.71");
};

AlphaScan synthetic(const Coefficients& k, const ScanOptions& grid) {
  AlphaScan s;
  for (const auto& ai : scan_grid(grid)) {
    const HighReal a = 1 / ai;
    const HighReal a2 = a * a;
    s.points.push_back({ai, k.e0 + a2 * k.e2 + a2 * a * k.e3 + a2 * a2 * log(a) * k.e4log + a2 * a2 * k.e4});
  }
  return s;
}

BasisSet data_basis(const std::string& system, std::size_t nb) {
  return load_exponents(std::string(NOPAIR_DATA_DIR) + "/exponents/" + system + "_nb" + std::to_string(nb) + ".txt",
                        nb)
      .basis;
}

}  // namespace

TEST_CASE("scan grid") {
  ScanOptions o;
  CHECK(scan_grid(o).size() == 21);
  CHECK(scan_grid(o).front() == default_alpha_inverse() - 50);
  o.from = -50;
  o.to = 51;
  o.step = 1;
  const auto full = scan_grid(o);
  CHECK(full.size() == 102);
  CHECK(full.back() == default_alpha_inverse() + 51);
  o.to = -51;
  CHECK_THROWS_AS(scan_grid(o), std::invalid_argument);
  o.to = 0;
  o.step = 0;
  CHECK_THROWS_AS(scan_grid(o), std::invalid_argument);
  o.step = 1;
  o.from = -200;
  CHECK_THROWS_AS(scan_grid(o), std::invalid_argument);
}

TEST_CASE("scan model names") {
  for (ScanModel m : {ScanModel::dc, ScanModel::dc_pt1, ScanModel::dcb_pt2, ScanModel::dcb})
    CHECK(parse_scan_model(to_string(m)) == m);
  CHECK(parse_scan_model("pt1") == ScanModel::dc_pt1);
  CHECK_THROWS_AS(parse_scan_model("dirac"), std::invalid_argument);
}

TEST_CASE("synthetic fit recovery") {
  const Coefficients k;
  for (int step : {1, 5}) {
    ScanOptions grid;
    grid.step = step;
    grid.to = step == 1 ? 51 : 50;
    const auto f = fit(synthetic(k, grid));
    CHECK(f.points_used == scan_grid(grid).size());
    CHECK(to_double(abs(f.eps0 - k.e0)) < 1e-18);
    CHECK(to_double(abs(f.eps2 - k.e2)) < 1e-18);
    CHECK(to_double(abs(f.eps3 - k.e3)) < 1e-18);
    CHECK(to_double(abs(f.eps4log - k.e4log)) < 1e-18);
    CHECK(to_double(abs(f.eps4 - k.e4)) < 1e-18);
    CHECK(to_double(f.rms_residual) < 1e-28);
    for (const auto& p : synthetic(k, grid).points)
      CHECK(to_double(abs(evaluate(f, 1 / p.alpha_inverse) - p.energy)) < 1e-28);
  }
}

TEST_CASE("log column matters when present in the data") {
  const Coefficients k;
  const AlphaScan s = synthetic(k, ScanOptions{});
  const auto with = fit(s, true);
  const auto without = fit(s, false);
  CHECK(!without.include_log);
  CHECK(without.eps4log == 0);
  CHECK(without.rms_residual > 1000 * with.rms_residual);

  Coefficients no_log = k;
  no_log.e4log = 0;
  const auto clean = fit(synthetic(no_log, ScanOptions{}), false);
  CHECK(to_double(abs(clean.eps4 - no_log.e4)) < 1e-16);

  FitOptions fifth;
  fifth.include_fifth_order = true;
  const auto f5 = fit(s, fifth);
  CHECK(to_double(abs(f5.eps2 - k.e2)) < 1e-15);
  CHECK(to_double(abs(f5.eps5)) < 1e-6);
}

TEST_CASE("fit argument checks") {
  AlphaScan s;
  for (int i = 0; i < 4; ++i) s.points.push_back({HighReal(100 + i), HighReal(-i)});
  CHECK_THROWS_AS(fit(s), std::invalid_argument);
  CHECK_NOTHROW(fit(s, false));
  AlphaScan same;
  for (int i = 0; i < 8; ++i) same.points.push_back({HighReal(137), HighReal(-1)});
  CHECK_THROWS_AS(fit(same), RankDeficient);
}

TEST_CASE("scan of a real system") {
  const auto sys = preset_system("ps");
  const HamiltonianCache cache(data_basis("ps", 10));
  ScanOptions o;
  o.from = 0;
  o.to = 0;
  const auto single = run_scan(sys, cache, ScanModel::dc, o);
  REQUIRE(single.points.size() == 1);
  CHECK(single.points[0].energy == solve_projected(sys, cache, Model::dc).ground());

  o.from = -40;
  o.to = 40;
  o.step = 20;
  const auto all = run_scan_all(sys, cache, o);
  const auto& dc = all.at(ScanModel::dc);
  CHECK(dc.points.size() == 5);
  // The Dirac-Coulomb shift of positronium is upward and shrinks with alpha.
  const HighReal e_nr = solve_nonrelativistic(sys, cache.basis()).energy;
  for (std::size_t i = 0; i < dc.points.size(); ++i) CHECK(dc.points[i].energy > e_nr);
  for (std::size_t i = 1; i < dc.points.size(); ++i) CHECK(dc.points[i].energy < dc.points[i - 1].energy);
  for (std::size_t i = 0; i < dc.points.size(); ++i) {
    CHECK(all.at(ScanModel::dcb).points[i].energy < dc.points[i].energy);
    CHECK(all.at(ScanModel::dcb_pt2).points[i].energy <= all.at(ScanModel::dc_pt1).points[i].energy);
  }

  const auto dc_only = run_scan(sys, cache, ScanModel::dc, o);
  for (std::size_t i = 0; i < dc.points.size(); ++i) CHECK(dc_only.points[i].energy == dc.points[i].energy);

  o.threads = 3;
  const auto threaded = run_scan_all(sys, cache, o);
  for (std::size_t i = 0; i < dc.points.size(); ++i)
    CHECK(threaded.at(ScanModel::dcb).points[i].energy == all.at(ScanModel::dcb).points[i].energy);

  std::ostringstream csv;
  write_scan_csv(dc, csv);
  std::istringstream lines(csv.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line == "alpha_inverse,alpha,model,energy_hartree");
  std::size_t n = 0;
  while (std::getline(lines, line)) {
    CHECK(line.find(",DC,") != std::string::npos);
    ++n;
  }
  CHECK(n == 5);

  const auto j = fit_to_json(fit(dc, false));
  CHECK(j.at("points_used") == 5);
  CHECK(j.at("eps4log").is_null());
  CHECK(rel_diff(parse_real(j.at("eps0").get<std::string>()), fit(dc, false).eps0) == 0);
}
