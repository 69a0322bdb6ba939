#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "report.hpp"
#include "run_config.hpp"

using namespace nopair;
using namespace nopair::cli;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("defaults resolve and validate") {
  const RunConfig c = resolve({}, {}, nullptr);
  CHECK(c.system == "ps");
  CHECK(c.nb == 10);
  CHECK(c.alpha_inverse == default_alpha_inverse());
  CHECK(c.precision_digits == kPrecisionDigits);
  CHECK(c.cut_policy() == CutPolicy::strict);
  CHECK(c.scan_models().size() == 4);
  CHECK(c.breit_columns().size() == 3);
}

TEST_CASE("flags override the file, the file overrides the environment") {
  const auto path = write_temp("nopair_cli_override.toml",
                               "[system]\npreset = \"h\"\n[basis]\nnb = 20\nprecision_digits = " +
                                   std::to_string(kPrecisionDigits) + "\n[run]\nscan_step = 2\n");
  const auto file = read_config_file(path);
  CHECK(file.at("system.preset") == "h");

  RunConfig c = resolve(file, {{"nb", "30"}}, "999");
  CHECK(c.system == "h");
  CHECK(c.nb == 30);
  CHECK(c.scan_step == 2);

  // Without the file value the environment fallback is what is checked.
  CHECK_THROWS_AS(resolve({}, {}, "999"), UsageError);
  CHECK_THROWS_AS(resolve({}, {}, "abc"), UsageError);
  CHECK_NOTHROW(resolve({}, {}, std::to_string(kPrecisionDigits).c_str()));
}

TEST_CASE("the echoed config reproduces the run") {
  RunConfig c = resolve({}, {{"system", "custom"},
                             {"m1", "1"},
                             {"m2", "18361.5267343"},
                             {"alpha-inverse", "87.035999084"},
                             {"breit", "pt2"},
                             {"no-log-term", "false"},
                             {"cut", "count"},
                             {"out", "a \"quoted\" name"},
                             {"threads", "3"}},
                        nullptr);
  CHECK(c.two_body().m2 == HighReal("18361.5267343"));
  const auto path = write_temp("nopair_cli_echo.toml", c.to_toml());
  const RunConfig back = resolve(read_config_file(path), {}, nullptr);
  CHECK(back.to_toml() == c.to_toml());
  CHECK(back.alpha_inverse == c.alpha_inverse);
  CHECK(back.m2 == c.m2);
  CHECK(back.out == c.out);
  CHECK_FALSE(back.log_term);
  CHECK(back.cut_policy() == CutPolicy::count);
  CHECK(back.breit_columns() == std::vector<ScanModel>{ScanModel::dcb_pt2});
}

TEST_CASE("invalid settings are usage errors") {
  CHECK_THROWS_AS(resolve({}, {{"nb", "0"}}, nullptr), UsageError);
  CHECK_THROWS_AS(resolve({}, {{"nb", "ten"}}, nullptr), UsageError);
  CHECK_THROWS_AS(resolve({}, {{"threads", "0"}}, nullptr), UsageError);
  CHECK_THROWS_AS(resolve({}, {{"system", "tritium"}}, nullptr), UsageError);
  CHECK_THROWS_AS(resolve({}, {{"alpha-inverse", "-1"}}, nullptr), UsageError);
  CHECK_THROWS_AS(resolve({}, {{"scan-from", "3"}, {"scan-to", "1"}}, nullptr), UsageError);
  CHECK_THROWS_AS(resolve({}, {{"scan-step", "0"}}, nullptr), UsageError);
  CHECK_THROWS_AS(resolve({}, {{"alpha-inverse", "40"}, {"scan-from", "-50"}}, nullptr), UsageError);
  CHECK_THROWS_AS(resolve({}, {{"breit", "none"}}, nullptr), UsageError);
  CHECK_THROWS_AS(resolve({}, {{"system", "custom"}, {"m2-over-m1", "0"}}, nullptr), UsageError);
  CHECK_THROWS_AS(resolve({}, {{"cut", "loose"}}, nullptr), UsageError);

  const auto unknown = write_temp("nopair_cli_unknown.toml", "[basis]\nsize = 3\n");
  CHECK_THROWS_AS(read_config_file(unknown), UsageError);
  CHECK_THROWS_AS(read_config_file("/nonexistent/nopair.toml"), UsageError);
}

TEST_CASE("dc-only drops the Breit columns") {
  const RunConfig c = resolve({}, {{"model", "dc-only"}}, nullptr);
  CHECK(c.breit == "none");
  CHECK(c.breit_columns().empty());
  CHECK(c.scan_models() == std::vector<ScanModel>{ScanModel::dc});
}

TEST_CASE("digit grouping") {
  CHECK(grouped(HighReal("-0.249997552780"), 12) == "-0.249 997 552 780");
  CHECK(grouped(HighReal("9.78889"), 4) == "9.788 9");
  CHECK(grouped(HighReal("-92.92041731131"), 11) == "-92.920 417 311 31");
  CHECK(brief(HighReal("-4.5e-12")) == "-4.50e-12");
}

TEST_CASE("relative importance ratios") {
  const TwoBodySystem ps = preset_system("ps");
  EnergyRow row;
  row.e_nr = HighReal(-1);
  row.e_dc = HighReal("-1.000001");
  row.e_pt1 = row.e_dc;
  row.e_pt2 = row.e_dc;
  row.e_dcb = row.e_dc;
  const auto r = relative_importance(ps, row);
  CHECK(abs(r.dc + 1) < HighReal("1e-20"));
  CHECK(r.pt1 == 0);
}

TEST_CASE("coefficient comparison takes nrQED minus fit") {
  const TwoBodySystem ps = preset_system("ps");
  const NrqedReport nr = nrqed_report(ps);
  FitResult f;
  f.eps0 = nr.e_nr;
  f.eps2 = nr.e2_dc + 1;
  f.eps3 = nr.e3_c0;
  f.eps4log = *nr.a4log_ps;
  const auto rows = compare_coefficients(ps, {{ScanModel::dc, f}});
  REQUIRE(rows.size() == 4);
  CHECK(rows[1].label == "DC eps2");
  const HighReal a = ps.alpha();
  CHECK(abs(*rows[1].scaled_difference + a * a) < HighReal("1e-30"));
  CHECK(*rows[2].scaled_difference == 0);
  CHECK(rows[3].order == 4);

  // Without equal masses there is no reference for the Breit a^3 term.
  FitResult g = f;
  g.include_log = false;
  const auto h = compare_coefficients(preset_system("h"), {{ScanModel::dc_pt1, g}});
  REQUIRE(h.size() == 3);
  CHECK_FALSE(h[2].reference.has_value());
}
