#pragma once

// Settings of one nopair-qed run. Every field has a TOML key and a flag;
// resolution order is defaults, NOPAIR_QED_PRECISION, config file, flags.

#include <filesystem>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "nopair/alphafit.hpp"
#include "nopair/nopair.hpp"

namespace nopair::cli {

/// Bad flags, values or config files; exit code 2.
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string system = "ps";  // preset name or "custom"
  HighReal m1 = 1;
  HighReal m2_over_m1 = 1;
  HighReal m2 = 0;  // when positive, replaces m2_over_m1 by m2 / m1
  HighReal alpha_inverse = default_alpha_inverse();
  std::size_t nb = 10;
  std::string exponents;  // explicit exponent file
  std::string exponent_cache;
  int precision_digits = kPrecisionDigits;
  std::string model = "dcb";  // dc, dcb, dc-only
  std::string breit = "all";  // none, pt1, pt2, variational, all
  int scan_from = -50;
  int scan_to = 50;
  int scan_step = 5;
  bool log_term = true;
  std::string cut = "strict";
  std::string out;
  unsigned threads = 1;
  bool dump_matrices = false;
  bool verbose = false;

  /// Throws UsageError.
  void validate() const;
  TwoBodySystem two_body() const;
  CutPolicy cut_policy() const { return parse_cut_policy(cut); }
  ScanOptions scan_options() const;
  /// Scan models selected by model and breit.
  std::vector<ScanModel> scan_models() const;
  /// Breit columns of a solve row; empty for dc or dc-only.
  std::vector<ScanModel> breit_columns() const;
  /// A config file that reproduces this run.
  std::string to_toml() const;
};

struct Field {
  std::string section;
  std::string key;
  std::string flag;  // long flag without dashes
  std::string help;
  /// Non-empty for a flag without a value: the TOML value it stands for.
  std::string switch_value;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

const std::vector<Field>& fields();

/// Key "section.key" to raw value. Throws UsageError for unreadable files or
/// unknown keys.
std::map<std::string, std::string> read_config_file(const std::filesystem::path& path);

/// defaults <- environment precision <- file <- flags. Flag values are keyed
/// by flag name and written as in TOML (a switch carries its switch_value).
RunConfig resolve(const std::map<std::string, std::string>& file_values,
                  const std::map<std::string, std::string>& flag_values, const char* env_precision);

}  // namespace nopair::cli
