// nopair-qed: exponent optimization, no-pair energies, alpha scans and the
// comparison with the perturbative coefficients.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "nopair/alphafit.hpp"
#include "nopair/errors.hpp"
#include "nopair/nrqed.hpp"
#include "nopair/perturbation.hpp"
#include "report.hpp"
#include "run_config.hpp"

namespace fs = std::filesystem;
using namespace nopair;
using namespace nopair::cli;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

std::string default_prefix(const RunConfig& c) { return c.system + "_nb" + std::to_string(c.nb); }

std::string prefix(const RunConfig& c) { return c.out.empty() ? default_prefix(c) : c.out; }

BasisSet load_basis(const RunConfig& c, const TwoBodySystem& sys) {
  if (!c.exponents.empty()) return load_exponents(c.exponents, c.nb).basis;
  if (c.system != "custom") {
    const fs::path cached = fs::path(c.exponent_cache) / (default_prefix(c) + ".txt");
    if (fs::exists(cached)) {
      if (c.verbose) std::cerr << "exponents from " << cached.string() << "\n";
      return load_exponents(cached, c.nb).basis;
    }
  }
  std::cerr << "no cached exponents for " << default_prefix(c) << "; optimizing\n";
  OptimizerOptions o;
  o.verbose = c.verbose;
  return optimize_exponents(sys, c.nb, o).basis;
}

nlohmann::json config_json(const RunConfig& c) {
  nlohmann::json j;
  for (const Field& f : fields()) j[f.section][f.key] = f.get(c);
  return j;
}

int cmd_optimize(const RunConfig& c) {
  const TwoBodySystem sys = c.two_body();
  OptimizerOptions o;
  o.verbose = c.verbose;
  OptimizationResult r;
  if (c.exponents.empty())
    r = optimize_exponents(sys, c.nb, o);
  else
    r = refine_exponents(sys, load_exponents(c.exponents, c.nb).basis, o);
  const fs::path path = c.out.empty() ? fs::path(default_prefix(c) + ".txt") : fs::path(c.out);
  save_exponents(r.basis, path, sys.name);
  const HighReal exact = e_nr(sys);
  std::cout << "wrote " << path.string() << "\n";
  std::cout << "E_nr          " << to_string(r.energy, 20) << "\n";
  std::cout << "-mu/2         " << to_string(exact, 20) << "\n";
  std::cout << "E_nr + mu/2   " << brief(r.energy - exact, 3) << "\n";
  std::cout << "cycles " << r.cycles << ", quasi-Newton iterations " << r.quasi_newton_iterations << "\n";
  if (r.stalled) std::cout << "stalled: " << r.note << "\n";
  return 0;
}

void dump_matrices(const RunConfig& c, const TwoBodySystem& sys, const HamiltonianCache& cache) {
  const std::string p = prefix(c);
  const auto ch = SpinChannel::singlet;
  write_triplets(assemble_metric(sys, cache, ch), p + ".metric.txt");
  write_triplets(assemble_bare(sys, cache, ch), p + ".bare.txt");
  write_triplets(assemble_coulomb(sys, cache, ch), p + ".coulomb.txt");
  write_triplets(assemble_breit(sys, cache, ch), p + ".breit.txt");
  std::cerr << "singlet-channel matrices written to " << p << ".{metric,bare,coulomb,breit}.txt\n";
}

int cmd_solve(const RunConfig& c) {
  const TwoBodySystem sys = c.two_body();
  const BasisSet basis = load_basis(c, sys);
  const HamiltonianCache cache(basis, c.threads);
  if (c.dump_matrices) dump_matrices(c, sys, cache);
  const auto columns = c.breit_columns();
  EnergyRow row;
  if (columns.empty()) {
    row.e_nr = solve_nonrelativistic(sys, basis).energy;
    row.e_dc = solve_projected(sys, cache, Model::dc, SpinChannel::singlet, {}, c.cut_policy()).ground();
  } else {
    row = compute_energy_row(sys, cache, {}, c.cut_policy());
  }
  print_row(std::cout, sys, c.nb, row, columns);

  if (!c.out.empty()) {
    std::vector<std::pair<std::string, HighReal>> values{{"E_nr", row.e_nr}, {"E_DC", row.e_dc}};
    for (ScanModel m : columns) values.emplace_back(std::string("E_") + std::string(to_string(m)), pick(row, m));
    const fs::path path = c.out;
    auto out = open_output(path);
    if (path.extension() == ".json") {
      nlohmann::json j;
      j["config"] = config_json(c);
      j["system"] = sys.name;
      j["nb"] = c.nb;
      j["alpha_inverse"] = to_string(sys.alpha_inverse);
      for (const auto& [k, v] : values) j["energies"][k] = to_string(v);
      out << j.dump(2) << "\n";
    } else {
      out << "system,nb,alpha_inverse";
      for (const auto& kv : values) out << "," << kv.first;
      out << "\n" << sys.name << "," << c.nb << "," << to_string(sys.alpha_inverse);
      for (const auto& kv : values) out << "," << to_string(kv.second);
      out << "\n";
    }
  }
  return 0;
}

std::map<ScanModel, AlphaScan> scans_for(const RunConfig& c, const TwoBodySystem& sys, const HamiltonianCache& cache,
                                         const std::vector<ScanModel>& models) {
  const ScanOptions o = c.scan_options();
  if (models == std::vector<ScanModel>{ScanModel::dc}) return {{ScanModel::dc, run_scan(sys, cache, ScanModel::dc, o)}};
  auto all = run_scan_all(sys, cache, o);
  std::map<ScanModel, AlphaScan> picked;
  for (ScanModel m : models) picked[m] = std::move(all[m]);
  return picked;
}

int cmd_scan_fit(const RunConfig& c) {
  const TwoBodySystem sys = c.two_body();
  const BasisSet basis = load_basis(c, sys);
  const HamiltonianCache cache(basis, c.threads);
  const auto scans = scans_for(c, sys, cache, c.scan_models());

  const std::string p = prefix(c);
  {
    std::vector<const AlphaScan*> list;
    for (const auto& kv : scans) list.push_back(&kv.second);
    auto out = open_output(p + ".scan.csv");
    write_scan_csv(list, out);
  }
  nlohmann::json j;
  j["config"] = config_json(c);
  FitOptions fo;
  fo.include_log = c.log_term;
  for (const auto& [model, scan] : scans) {
    const FitResult f = fit(scan, fo);
    print_fit(std::cout, model, f);
    j["fits"][std::string(to_string(model))] = fit_to_json(f);
  }
  auto out = open_output(p + ".fit.json");
  out << j.dump(2) << "\n";
  std::cerr << "wrote " << p << ".scan.csv and " << p << ".fit.json\n";
  return 0;
}

int cmd_compare(const RunConfig& c) {
  const TwoBodySystem sys = c.two_body();
  const BasisSet basis = load_basis(c, sys);
  const HamiltonianCache cache(basis, c.threads);
  auto models = c.scan_models();
  const auto scans = scans_for(c, sys, cache, models);
  std::map<ScanModel, FitResult> fits;
  FitOptions fo;
  fo.include_log = c.log_term;
  for (const auto& [model, scan] : scans) fits[model] = fit(scan, fo);

  std::cout << "fitted coefficients against nrQED, " << sys.name << " n_b = " << c.nb << "\n";
  const auto rows = compare_coefficients(sys, fits);
  print_comparison(std::cout, rows);
  std::cout << "\n";
  if (!c.breit_columns().empty()) {
    const EnergyRow row = compute_energy_row(sys, cache, {}, c.cut_policy());
    print_relative_importance(std::cout, sys, relative_importance(sys, row));
  }

  if (!c.out.empty()) {
    nlohmann::json j;
    j["config"] = config_json(c);
    for (const auto& r : rows) {
      nlohmann::json e;
      e["order"] = r.order;
      e["fitted"] = to_string(r.fitted);
      e["nrqed"] = r.reference ? nlohmann::json(to_string(*r.reference)) : nlohmann::json(nullptr);
      e["scaled_difference"] =
          r.scaled_difference ? nlohmann::json(to_string(*r.scaled_difference)) : nlohmann::json(nullptr);
      j["comparison"][r.label] = e;
    }
    auto out = open_output(c.out);
    out << j.dump(2) << "\n";
  }
  return 0;
}

int cmd_nrqed(const RunConfig& c) {
  const TwoBodySystem sys = c.two_body();
  const NrqedReport r = nrqed_report(sys);
  print_nrqed(std::cout, sys, r);
  if (!c.out.empty()) {
    auto out = open_output(c.out);
    out << report_to_json(r).dump(2) << "\n";
  }
  return 0;
}

// Prints an exception and everything nested inside it.
void report(const std::exception& e, int depth = 0) {
  std::cerr << (depth == 0 ? "error: " : "  caused by: ") << e.what() << "\n";
  try {
    std::rethrow_if_nested(e);
  } catch (const std::exception& inner) {
    report(inner, depth + 1);
  } catch (...) {
  }
}

bool mentions_ambiguous_cut(const std::exception& e) {
  if (dynamic_cast<const AmbiguousCut*>(&e)) return true;
  try {
    std::rethrow_if_nested(e);
  } catch (const std::exception& inner) {
    return mentions_ambiguous_cut(inner);
  } catch (...) {
  }
  return false;
}

struct Command {
  CLI::App* app = nullptr;
  std::string config;
  std::map<std::string, std::string> raw;
  std::vector<std::pair<const Field*, CLI::Option*>> options;
  int (*run)(const RunConfig&) = nullptr;
};

void add_command(CLI::App& app, Command& cmd, const std::string& name, const std::string& help,
                 int (*run)(const RunConfig&)) {
  cmd.app = app.add_subcommand(name, help);
  cmd.run = run;
  cmd.app->add_option("--config", cmd.config, "TOML file with [system], [basis] and [run] sections");
  for (const Field& f : fields()) {
    CLI::Option* o = f.switch_value.empty() ? cmd.app->add_option("--" + f.flag, cmd.raw[f.flag], f.help)
                                            : cmd.app->add_flag("--" + f.flag, f.help);
    cmd.options.emplace_back(&f, o);
  }
}

int execute(const Command& cmd) {
  std::map<std::string, std::string> flags;
  for (const auto& [field, opt] : cmd.options) {
    if (opt->count() == 0) continue;
    flags[field->flag] = field->switch_value.empty() ? cmd.raw.at(field->flag) : field->switch_value;
  }
  const auto file = cmd.config.empty() ? std::map<std::string, std::string>{} : read_config_file(cmd.config);
  const RunConfig config = resolve(file, flags, std::getenv("NOPAIR_QED_PRECISION"));
  std::cerr << "# resolved configuration\n" << config.to_toml() << "\n";
  return cmd.run(config);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"No-pair Dirac-Coulomb-Breit energies of two-body systems in a Gaussian basis"};
  app.require_subcommand(1);
  Command commands[5];
  add_command(app, commands[0], "optimize", "optimize the Gaussian exponents and write them to a file", cmd_optimize);
  add_command(app, commands[1], "solve", "one row of E_nr, E_DC and the Breit-corrected energies", cmd_solve);
  add_command(app, commands[2], "scan-fit", "energies over an alpha grid and their alpha expansion", cmd_scan_fit);
  add_command(app, commands[3], "compare", "fitted coefficients against nrQED, and relative sizes", cmd_compare);
  add_command(app, commands[4], "nrqed", "perturbative coefficients only", cmd_nrqed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  for (const Command& cmd : commands) {
    if (!cmd.app->parsed()) continue;
    try {
      return execute(cmd);
    } catch (const UsageError& e) {
      std::cerr << "usage error: " << e.what() << "\n";
      return kExitUsage;
    } catch (const ParseError& e) {
      report(e);
      return kExitUsage;
    } catch (const std::invalid_argument& e) {
      report(e);
      return kExitUsage;
    } catch (const std::exception& e) {
      report(e);
      if (mentions_ambiguous_cut(e))
        std::cerr << "hint: this basis pollutes the cut region; --cut count checks the kept states only\n";
      return kExitFailure;
    }
  }
  return kExitUsage;
}
