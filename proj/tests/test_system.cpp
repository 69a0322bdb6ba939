#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "nopair/errors.hpp"
#include "nopair/oracles.hpp"
#include "nopair/system.hpp"
#include "test_support.hpp"

using namespace nopair;
using nopair::testing::rel_diff;
using nopair::testing::to_double;

namespace {

BasisSet random_basis(std::mt19937_64& rng, std::size_t n, double lo = 1e-2, double hi = 1e3) {
  std::vector<HighReal> z;
  while (z.size() < n) {
    const HighReal v = nopair::testing::log_uniform(rng, lo, hi);
    bool ok = true;
    for (const auto& w : z) ok = ok && abs(v - w) > HighReal(1e-3) * v;
    if (ok) z.push_back(v);
  }
  return BasisSet(std::move(z));
}

// Single normalized Gaussian: <p^2> = 3 zeta and <1/r> = 2 sqrt(2 zeta / pi).
HighReal single_gaussian_energy(const HighReal& mu, const HighReal& zeta) {
  return 3 * zeta / (2 * mu) - 2 * sqrt(2 * zeta / pi());
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("nopair_test_" + name);
}

}  // namespace

TEST_CASE("presets") {
  CHECK(preset_names().size() == 5);
  for (const auto& name : preset_names()) {
    const auto s = preset_system(name);
    CHECK(s.name == name);
    CHECK(s.q1q2 == -1);
    CHECK(s.c() == default_alpha_inverse());
  }
  CHECK(preset_system("ps").reduced_mass() == HighReal("0.5"));
  CHECK(preset_system("muh").m2 == HighReal("1836.15267343"));
  CHECK(to_double(abs(preset_system("muh").m2 / preset_system("muh").m1 - HighReal("8.88024337"))) < 5e-9);
  CHECK_THROWS_AS(preset_system("he"), std::invalid_argument);
  CHECK_THROWS_AS(custom_system(HighReal(1), HighReal(-2)), std::invalid_argument);
  CHECK_THROWS_AS(preset_system("h").with_alpha_inverse(HighReal(0)), std::invalid_argument);
  CHECK(preset_system("h").with_alpha_inverse(HighReal(100)).alpha() == HighReal("0.01"));
}

TEST_CASE("basis validation") {
  const BasisSet b({HighReal(3), HighReal(1), HighReal(2)});
  CHECK(b[0] == 1);
  CHECK(b[2] == 3);
  CHECK_THROWS_AS(BasisSet({HighReal(1), HighReal(-1)}), NonPositiveExponent);
  CHECK_THROWS_AS(BasisSet({HighReal(1), HighReal(0)}), NonPositiveExponent);
  CHECK_THROWS_AS(BasisSet({HighReal(1), HighReal(1) + HighReal(1e-10)}), std::invalid_argument);
  CHECK_NOTHROW(BasisSet({HighReal(1), HighReal(1) + HighReal(1e-6)}));
  CHECK(b.scaled(HighReal(4))[1] == 8);
}

TEST_CASE("single gaussian energy matches closed form") {
  std::mt19937_64 rng(11);
  for (const auto& name : preset_names()) {
    const auto sys = preset_system(name);
    for (int k = 0; k < 5; ++k) {
      const HighReal z = nopair::testing::log_uniform(rng, 1e-3, 1e6);
      CHECK(rel_diff(solve_nonrelativistic(sys, BasisSet({z})).energy,
                     single_gaussian_energy(sys.reduced_mass(), z)) < 1e-30);
    }
  }
}

TEST_CASE("single gaussian optimum") {
  for (const char* name : {"ps", "h", "muh"}) {
    const auto sys = preset_system(name);
    const HighReal mu = sys.reduced_mass();
    const auto r = optimize_exponents(sys, 1);
    const HighReal zeta = 8 * mu * mu / (9 * pi());
    CHECK(rel_diff(r.basis[0], zeta) < 1e-9);
    CHECK(rel_diff(r.energy, -4 * mu / (3 * pi())) < 1e-20);
    // Independent 1-D scan of the closed form around the optimum.
    HighReal best = single_gaussian_energy(mu, zeta);
    for (int k = -20; k <= 20; ++k) {
      if (k == 0) continue;
      const HighReal z = zeta * exp(HighReal(k) / 1000);
      CHECK(single_gaussian_energy(mu, z) > best);
    }
  }
}

TEST_CASE("variational bound") {
  std::mt19937_64 rng(12);
  for (const auto& name : preset_names()) {
    const auto sys = preset_system(name);
    const HighReal mu = sys.reduced_mass();
    for (std::size_t n : {2, 5, 12}) {
      const BasisSet b = random_basis(rng, n, 1e-2, 1e4).scaled(4 * mu * mu);
      CHECK(solve_nonrelativistic(sys, b).energy >= -mu / 2);
    }
  }
}

TEST_CASE("nesting monotonicity") {
  std::mt19937_64 rng(13);
  const auto sys = preset_system("h");
  for (int trial = 0; trial < 10; ++trial) {
    BasisSet b = random_basis(rng, 4);
    HighReal e = solve_nonrelativistic(sys, b).energy;
    for (int add = 0; add < 6; ++add) {
      std::vector<HighReal> z = b.exponents();
      HighReal v;
      do {
        v = nopair::testing::log_uniform(rng, 1e-2, 1e3);
      } while (!BasisSet::well_separated([&] {
        auto t = z;
        t.push_back(v);
        std::sort(t.begin(), t.end());
        return t;
      }()));
      z.push_back(v);
      b = BasisSet(std::move(z));
      const HighReal e2 = solve_nonrelativistic(sys, b).energy;
      CHECK(e2 <= e + HighReal(1e-28));
      e = e2;
    }
  }
}

TEST_CASE("scaling covariance") {
  std::mt19937_64 rng(14);
  const BasisSet b = random_basis(rng, 8);
  for (const auto& name : preset_names()) {
    const auto sys = preset_system(name);
    const HighReal e = solve_nonrelativistic(sys, b).energy;
    for (const HighReal s : {HighReal("0.37"), HighReal(3), HighReal("206.7682830")}) {
      TwoBodySystem scaled = sys;
      scaled.m1 *= s;
      scaled.m2 *= s;
      CHECK(rel_diff(solve_nonrelativistic(scaled, b.scaled(s * s)).energy, s * e) < 1e-25);
    }
  }
}

TEST_CASE("analytic gradient matches finite differences") {
  std::mt19937_64 rng(15);
  for (const char* name : {"ps", "h", "muh"}) {
    const auto sys = preset_system(name);
    const HighReal mu = sys.reduced_mass();
    const BasisSet b = random_basis(rng, 6, 1e-2, 1e2).scaled(4 * mu * mu);
    const auto sol = solve_nonrelativistic(sys, b);
    const Vector g = nonrelativistic_gradient(sys, b, sol);
    HighReal gmax = 0;
    for (const auto& v : g) gmax = std::max(gmax, HighReal(abs(v)));
    for (std::size_t k = 0; k < b.size(); ++k) {
      auto f = [&](const HighReal& t) {
        std::vector<HighReal> z = b.exponents();
        z[k] = exp(t);
        return solve_nonrelativistic(sys, BasisSet(z)).energy;
      };
      const HighReal fd = oracles::finite_difference_slope(f, log(b[k]), HighReal(1e-8));
      CHECK(to_double(abs(fd - g[k])) < 1e-12 * to_double(gmax));
    }
  }
}

TEST_CASE("positronium ten-term optimization") {
  const auto ps = preset_system("ps");
  const auto r = optimize_exponents(ps, 10);
  CHECK(to_double(abs(r.energy - HighReal("-0.2499996659884"))) < 1e-10);
  CHECK(r.energy >= HighReal("-0.25"));
  CHECK_FALSE(r.stalled);
  CHECK(r.energy == solve_nonrelativistic(ps, r.basis).energy);

  // Deterministic, and an exact image of the hydrogen problem.
  const auto again = optimize_exponents(ps, 10);
  CHECK(again.basis.exponents() == r.basis.exponents());
  const auto h = preset_system("h");
  const HighReal f = h.reduced_mass() / ps.reduced_mass();
  CHECK(rel_diff(optimize_exponents(h, 10).energy, f * r.energy) < 1e-28);

  // A perturbed start refines back to (at least) the same energy.
  std::vector<HighReal> z = r.basis.exponents();
  for (std::size_t i = 0; i < z.size(); i += 3) z[i] *= HighReal("1.02");
  OptimizerOptions fast;
  fast.max_quasi_newton_iterations = 400;
  const auto refined = refine_exponents(ps, BasisSet(z), fast);
  CHECK(refined.energy <= solve_nonrelativistic(ps, BasisSet(z)).energy);
  CHECK(to_double(abs(refined.energy - r.energy)) < 1e-11);
}

TEST_CASE("optimizer argument checks") {
  TwoBodySystem repulsive = preset_system("ps");
  repulsive.q1q2 = 1;
  CHECK_THROWS_AS(optimize_exponents(repulsive, 3), std::invalid_argument);
  CHECK_THROWS_AS(optimize_exponents(preset_system("ps"), 0), std::invalid_argument);
  OptimizerOptions bad;
  bad.target = 0;
  CHECK_THROWS_AS(optimize_exponents(preset_system("ps"), 2, bad), std::invalid_argument);
}

TEST_CASE("exponent file round trip") {
  std::mt19937_64 rng(16);
  const BasisSet b = random_basis(rng, 7);
  const auto path = temp_file("roundtrip.txt");
  save_exponents(b, path, "h");
  const auto loaded = load_exponents(path, 7);
  CHECK(loaded.basis.exponents() == b.exponents());
  CHECK(loaded.system_name == "h");
  CHECK(loaded.precision_digits == kPrecisionDigits);
  CHECK_THROWS_AS(load_exponents(path, 8), ParseError);
  std::filesystem::remove(path);
}

TEST_CASE("exponent file errors") {
  const auto path = temp_file("bad.txt");
  auto write = [&](const std::string& text) {
    std::ofstream(path) << text;
  };
  write("# nopair-qed exponents v1 system=ps nb=2 precision=34\n1.5\n-1.0\n");
  CHECK_THROWS_AS(load_exponents(path), NonPositiveExponent);
  write("# nopair-qed exponents v1 system=ps nb=3 precision=34\n1.5\n2.5\n");
  CHECK_THROWS_AS(load_exponents(path), ParseError);
  write("# nopair-qed exponents v1 system=ps nb=2 precision=34\n1.5\nabc\n");
  try {
    load_exponents(path);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  write("# something else\n1.5\n");
  CHECK_THROWS_AS(load_exponents(path), ParseError);
  write("");
  CHECK_THROWS_AS(load_exponents(path), ParseError);
  write("# nopair-qed exponents v1 system=ps nb=2 precision=34\n# comment\n1.5D0\n\n2.5e0\n");
  CHECK(load_exponents(path).basis[0] == HighReal("1.5"));
  CHECK_THROWS_AS(load_exponents(temp_file("missing.txt")), std::runtime_error);
  std::filesystem::remove(path);
}
