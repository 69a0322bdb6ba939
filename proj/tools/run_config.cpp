#include "run_config.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "nopair/errors.hpp"

#ifndef NOPAIR_DATA_DIR
#define NOPAIR_DATA_DIR "data"
#endif

namespace nopair::cli {

namespace {

template <class Int>
Int parse_int(const std::string& key, const std::string& text) {
  Int v{};
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size())
    throw UsageError(key + ": expected an integer, got '" + text + "'");
  return v;
}

HighReal parse_value(const std::string& key, const std::string& text) {
  try {
    return parse_real(text);
  } catch (const std::exception&) {
    throw UsageError(key + ": expected a number, got '" + text + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true") return true;
  if (text == "false") return false;
  throw UsageError(key + ": expected true or false, got '" + text + "'");
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

std::string real_text(const HighReal& x) { return to_string(x, kRoundTripDigits); }

std::vector<Field> make_fields() {
  std::vector<Field> f;
  auto text = [&](std::string section, std::string key, std::string flag, std::string help,
                  std::string RunConfig::*member, std::initializer_list<const char*> allowed = {}) {
    std::vector<const char*> choices(allowed);
    f.push_back({section, key, flag, help, "",
                 [member, key, choices](RunConfig& c, const std::string& v) {
                   if (!choices.empty()) {
                     bool ok = false;
                     for (const char* a : choices) ok = ok || v == a;
                     if (!ok) {
                       std::string list;
                       for (const char* a : choices) list += std::string(list.empty() ? "" : "|") + a;
                       throw UsageError(key + ": expected one of " + list + ", got '" + v + "'");
                     }
                   }
                   c.*member = v;
                 },
                 [member](const RunConfig& c) { return quoted(c.*member); }});
  };
  auto real = [&](std::string section, std::string key, std::string flag, std::string help,
                  HighReal RunConfig::*member) {
    f.push_back({section, key, flag, help, "",
                 [member, key](RunConfig& c, const std::string& v) { c.*member = parse_value(key, v); },
                 [member](const RunConfig& c) { return real_text(c.*member); }});
  };
  auto integer = [&](std::string section, std::string key, std::string flag, std::string help, int RunConfig::*member) {
    f.push_back({section, key, flag, help, "",
                 [member, key](RunConfig& c, const std::string& v) { c.*member = parse_int<int>(key, v); },
                 [member](const RunConfig& c) { return std::to_string(c.*member); }});
  };
  auto boolean = [&](std::string section, std::string key, std::string flag, std::string help, std::string sw,
                     bool RunConfig::*member) {
    f.push_back({section, key, flag, help, sw,
                 [member, key](RunConfig& c, const std::string& v) { c.*member = parse_bool(key, v); },
                 [member](const RunConfig& c) { return std::string(c.*member ? "true" : "false"); }});
  };

  text("system", "preset", "system", "ps, mu, h, muh, h10 or custom", &RunConfig::system,
       {"ps", "mu", "h", "muh", "h10", "custom"});
  real("system", "m1", "m1", "first mass (custom system), electron masses", &RunConfig::m1);
  real("system", "m2_over_m1", "m2-over-m1", "mass ratio (custom system)", &RunConfig::m2_over_m1);
  real("system", "m2", "m2", "second mass (custom system); overrides m2-over-m1", &RunConfig::m2);
  real("system", "alpha_inverse", "alpha-inverse", "inverse fine-structure constant", &RunConfig::alpha_inverse);
  f.push_back({"basis", "nb", "nb", "number of Gaussian functions", "",
               [](RunConfig& c, const std::string& v) { c.nb = parse_int<std::size_t>("nb", v); },
               [](const RunConfig& c) { return std::to_string(c.nb); }});
  text("basis", "exponents", "exponents", "exponent file to use instead of the cache", &RunConfig::exponents);
  text("basis", "exponent_cache", "exponent-cache", "directory of <preset>_nb<N>.txt files",
       &RunConfig::exponent_cache);
  integer("basis", "precision_digits", "precision-digits", "working precision; must match the build",
          &RunConfig::precision_digits);
  text("run", "model", "model", "dc, dcb or dc-only", &RunConfig::model, {"dc", "dcb", "dc-only"});
  text("run", "breit", "breit", "none, pt1, pt2, variational or all", &RunConfig::breit,
       {"none", "pt1", "pt2", "variational", "all"});
  integer("run", "scan_from", "scan-from", "first alpha^-1 offset of the scan", &RunConfig::scan_from);
  integer("run", "scan_to", "scan-to", "last alpha^-1 offset of the scan", &RunConfig::scan_to);
  integer("run", "scan_step", "scan-step", "alpha^-1 step of the scan", &RunConfig::scan_step);
  boolean("run", "log_term", "no-log-term", "fit without the a^4 ln(a) column", "false", &RunConfig::log_term);
  text("run", "cut", "cut", "energy-cut check: strict or count", &RunConfig::cut, {"strict", "count"});
  text("run", "out", "out", "output path", &RunConfig::out);
  f.push_back({"run", "threads", "threads", "worker threads", "",
               [](RunConfig& c, const std::string& v) { c.threads = parse_int<unsigned>("threads", v); },
               [](const RunConfig& c) { return std::to_string(c.threads); }});
  boolean("run", "dump_matrices", "dump-matrices", "write the assembled matrices next to --out", "true",
          &RunConfig::dump_matrices);
  boolean("run", "verbose", "verbose", "progress on stderr", "true", &RunConfig::verbose);
  return f;
}

}  // namespace

const std::vector<Field>& fields() {
  static const std::vector<Field> f = make_fields();
  return f;
}

void RunConfig::validate() const {
  if (precision_digits != kPrecisionDigits)
    throw UsageError("this build works at " + std::to_string(kPrecisionDigits) + " digits; --precision-digits " +
                     std::to_string(precision_digits) +
                     " needs a build configured with -DNOPAIR_PRECISION_DIGITS=" + std::to_string(precision_digits));
  if (nb == 0) throw UsageError("nb must be at least 1");
  if (threads == 0) throw UsageError("threads must be at least 1");
  if (!(alpha_inverse > 0)) throw UsageError("alpha_inverse must be positive");
  if (m2 < 0) throw UsageError("m2 must be positive");
  if (system == "custom" && (!(m1 > 0) || !(m2_over_m1 > 0)))
    throw UsageError("custom masses must be positive");
  if (scan_step <= 0) throw UsageError("scan_step must be positive");
  if (scan_to < scan_from) throw UsageError("empty alpha scan range");
  if (!(alpha_inverse + scan_from > 0)) throw UsageError("the scan reaches a non-positive alpha^-1");
  if (model == "dcb" && breit == "none") throw UsageError("model dcb needs a Breit treatment other than none");
}

TwoBodySystem RunConfig::two_body() const {
  TwoBodySystem s = system == "custom" ? custom_system(m1, m2 > 0 ? m2 / m1 : m2_over_m1) : preset_system(system);
  return s.with_alpha_inverse(alpha_inverse);
}

ScanOptions RunConfig::scan_options() const {
  ScanOptions o;
  o.from = scan_from;
  o.to = scan_to;
  o.step = scan_step;
  o.centre = alpha_inverse;
  o.cut = cut_policy();
  o.threads = threads;
  o.verbose = verbose;
  return o;
}

std::vector<ScanModel> RunConfig::breit_columns() const {
  if (model != "dcb") return {};
  if (breit == "pt1") return {ScanModel::dc_pt1};
  if (breit == "pt2") return {ScanModel::dcb_pt2};
  if (breit == "variational") return {ScanModel::dcb};
  if (breit == "all") return {ScanModel::dc_pt1, ScanModel::dcb_pt2, ScanModel::dcb};
  return {};
}

std::vector<ScanModel> RunConfig::scan_models() const {
  if (model != "dcb") return {ScanModel::dc};
  if (breit == "all") return {ScanModel::dc, ScanModel::dc_pt1, ScanModel::dcb_pt2, ScanModel::dcb};
  return breit_columns();
}

std::string RunConfig::to_toml() const {
  std::ostringstream out;
  std::string section;
  for (const Field& f : fields()) {
    if (f.section != section) {
      section = f.section;
      out << (out.tellp() > 0 ? "\n" : "") << "[" << section << "]\n";
    }
    out << f.key << " = " << f.get(*this) << "\n";
  }
  return out.str();
}

std::map<std::string, std::string> read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path.string());
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigTOML().from_config(in);
  } catch (const std::exception& e) {
    throw UsageError("config file " + path.string() + ": " + e.what());
  }
  std::set<std::string> known;
  for (const Field& f : fields()) known.insert(f.section + "." + f.key);
  std::map<std::string, std::string> values;
  for (const auto& item : items) {
    if (item.name == "++" || item.name == "--") continue;
    const std::string key = item.fullname();
    if (!known.count(key)) throw UsageError("config file " + path.string() + ": unknown key '" + key + "'");
    if (item.inputs.size() != 1) throw UsageError("config file " + path.string() + ": '" + key + "' needs one value");
    values[key] = item.inputs.front();
  }
  return values;
}

RunConfig resolve(const std::map<std::string, std::string>& file_values,
                  const std::map<std::string, std::string>& flag_values, const char* env_precision) {
  RunConfig c;
  c.exponent_cache = std::string(NOPAIR_DATA_DIR) + "/exponents";
  if (env_precision && *env_precision) {
    try {
      c.precision_digits = parse_int<int>("NOPAIR_QED_PRECISION", env_precision);
    } catch (const UsageError&) {
      throw UsageError(std::string("NOPAIR_QED_PRECISION: expected an integer, got '") + env_precision + "'");
    }
  }
  for (const Field& f : fields()) {
    const auto it = file_values.find(f.section + "." + f.key);
    if (it != file_values.end()) f.set(c, it->second);
  }
  for (const Field& f : fields()) {
    const auto it = flag_values.find(f.flag);
    if (it != flag_values.end()) f.set(c, it->second);
  }
  if (c.model == "dc-only") c.breit = "none";
  c.validate();
  return c;
}

}  // namespace nopair::cli
