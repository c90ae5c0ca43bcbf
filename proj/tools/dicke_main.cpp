// Command-line front end: gamma scans, critical-exponent extraction,
// universal collapse, truncation selection, and the cross-basis check.
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dicke/ecs.hpp"
#include "dicke/fock.hpp"
#include "dicke/io.hpp"
#include "dicke/model.hpp"
#include "dicke/observables.hpp"
#include "dicke/scaling.hpp"
#include "dicke/sweep.hpp"
#include "dicke/version.hpp"

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSolver = 3;
constexpr int kExitNoConvergence = 4;

struct SweepOpts {
  double gamma_min = 0.0;
  double gamma_max = 0.0;
  double dgamma = 0.0;
  int nmax = 8;
  double omega = 1.0;
  double omega0 = 1.0;
  int workers = 0;
  bool refine = false;
  double tol = 1e-12;
  std::uint64_t seed = 0x5eed;
  std::size_t dim_ceiling = dicke::kDefaultDimensionCeiling;
};

void add_sweep_options(CLI::App* cmd, SweepOpts& o) {
  cmd->add_option("--gamma-min", o.gamma_min, "Scan lower bound")->required();
  cmd->add_option("--gamma-max", o.gamma_max, "Scan upper bound")->required();
  cmd->add_option("--dgamma", o.dgamma, "Grid step (also the fidelity increment)")->required();
  cmd->add_option("--nmax", o.nmax, "Displaced-excitation truncation");
  cmd->add_option("--omega", o.omega, "Field frequency");
  cmd->add_option("--omega0", o.omega0, "Atomic level splitting");
  cmd->add_option("--workers", o.workers, "Worker threads (0: all cores)");
  cmd->add_flag("--refine", o.refine, "Golden-section refinement of the extremum");
  cmd->add_option("--tol", o.tol, "Eigensolver residual tolerance");
  cmd->add_option("--seed", o.seed, "Eigensolver start-vector seed");
  cmd->add_option("--dim-ceiling", o.dim_ceiling, "Basis dimension ceiling");
}

int resolve_workers(int cli_value) {
  // DICKE_WORKERS overrides the flag.
  if (const char* env = std::getenv("DICKE_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return cli_value;
}

std::string trim(const std::string& s) {
  const auto from = s.find_first_not_of(" \t\r");
  if (from == std::string::npos) return {};
  return s.substr(from, s.find_last_not_of(" \t\r") - from + 1);
}

// Flat key=value config mirroring the long flag names; '#' starts a comment.
// Keys already given on the command line are skipped, so flags win.
std::vector<std::string> load_config_tokens(const std::string& path,
                                            const std::set<std::string>& given_flags) {
  static const std::set<std::string> kFlagKeys{"refine", "emit-plot"};
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file: " + path);
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("bad config line (want key=value): " + line);
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || key == "config") continue;
    if (given_flags.count("--" + key)) continue;
    if (kFlagKeys.count(key)) {
      if (value == "true" || value == "1" || value == "yes" || value == "on") {
        tokens.push_back("--" + key);
      }
      continue;
    }
    tokens.push_back("--" + key);
    tokens.push_back(value);
  }
  return tokens;
}

// Expands "--config FILE" for the subcommand into explicit tokens placed
// ahead of the user's flags.
std::vector<std::string> expand_args(int argc, char** argv) {
  static const std::set<std::string> kSubcommands{"scan", "exponents", "collapse",
                                                  "converge", "oracle-check"};
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty() || kSubcommands.count(args[0]) == 0) return args;

  std::string config_path;
  std::set<std::string> given;
  for (std::size_t i = 1; i < args.size(); ++i) {
    const std::string& t = args[i];
    if (t.rfind("--", 0) != 0) continue;
    given.insert(t.substr(0, t.find('=')));
    if (t == "--config" && i + 1 < args.size()) {
      config_path = args[i + 1];
    } else if (t.rfind("--config=", 0) == 0) {
      config_path = t.substr(9);
    }
  }
  if (!config_path.empty()) {
    const std::vector<std::string> extra = load_config_tokens(config_path, given);
    args.insert(args.begin() + 1, extra.begin(), extra.end());
  }
  return args;
}

dicke::SweepConfig make_sweep_config(const SweepOpts& o) {
  dicke::SweepConfig cfg;
  cfg.gamma_start = o.gamma_min;
  cfg.gamma_end = o.gamma_max;
  cfg.dgamma = o.dgamma;
  cfg.n_max = o.nmax;
  cfg.refine = o.refine;
  cfg.workers = resolve_workers(o.workers);
  cfg.solver.tol = o.tol;
  cfg.solver.seed = o.seed;
  cfg.dim_ceiling = o.dim_ceiling;
  return cfg;
}

json sweep_opts_json(const SweepOpts& o) {
  return json{{"gamma-min", o.gamma_min}, {"gamma-max", o.gamma_max},
              {"dgamma", o.dgamma},       {"nmax", o.nmax},
              {"omega", o.omega},         {"omega0", o.omega0},
              {"workers", resolve_workers(o.workers)}, {"refine", o.refine},
              {"tol", o.tol},             {"seed", o.seed},
              {"dim-ceiling", o.dim_ceiling}};
}

class Manifest {
 public:
  Manifest(const std::string& command, json config)
      : start_(std::chrono::steady_clock::now()) {
    doc_["tool"] = "dicke";
    doc_["version"] = dicke::kVersion;
    doc_["command"] = command;
    doc_["config"] = std::move(config);
    doc_["outputs"] = json::array();
  }

  void add_output(const std::string& path) { doc_["outputs"].push_back(path); }
  void set(const std::string& key, json value) { doc_[key] = std::move(value); }

  void write(const std::string& data_out_path) {
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start_);
    doc_["timings"] = {{"total_ms", elapsed.count()}};
    dicke::io::write_file(data_out_path + ".manifest.json", doc_.dump(2) + "\n");
  }

 private:
  json doc_;
  std::chrono::steady_clock::time_point start_;
};

json solver_summary(const dicke::SweepResult& res) {
  json failures = json::array();
  for (const auto& f : res.failures) {
    failures.push_back({{"gamma", f.gamma}, {"message", f.message}});
  }
  return json{{"max_residual", res.max_residual},
              {"total_matvecs", res.total_iterations},
              {"failed_points", failures}};
}

std::string stem_path(const std::string& out) {
  fs::path p(out);
  return (p.parent_path() / p.stem()).string();
}

// ---------------------------------------------------------------- scan ----

int run_scan(int n_atoms, const SweepOpts& opts, const std::string& out, bool emit_plot) {
  dicke::ModelParams base{opts.omega, opts.omega0, n_atoms, 0.0};
  const dicke::SweepConfig cfg = make_sweep_config(opts);

  json config = sweep_opts_json(opts);
  config["n-atoms"] = n_atoms;
  Manifest manifest("scan", config);

  const dicke::SweepResult res = dicke::run_sweep(base, cfg);
  dicke::io::write_file(out, dicke::io::scan_csv(res.points));
  manifest.add_output(out);

  if (emit_plot) {
    const std::string stem = stem_path(out);
    const struct { const char* col; const char* title; } figs[] = {
        {"fidelity", "F"}, {"chi_f", "chi^F"}, {"delta_p", "Delta P"}};
    for (const auto& f : figs) {
      const std::string path = stem + "_" + f.col + ".gp";
      dicke::io::write_file(path, dicke::io::scan_plot_script(out, f.col, f.title));
      manifest.add_output(path);
    }
  }
  manifest.set("solver", solver_summary(res));
  manifest.write(out);

  if (!res.failures.empty()) {
    std::cerr << "scan: " << res.failures.size() << " grid point(s) failed; see manifest\n";
    return kExitSolver;
  }
  std::cout << "scan: " << res.points.size() << " points -> " << out << "\n";
  return kExitOk;
}

// ----------------------------------------------------------- exponents ----

struct PerNData {
  std::vector<dicke::ScanPoint> points;
  dicke::CriticalPoint critical;
};

std::map<int, PerNData> sweep_campaign(const std::vector<int>& n_list,
                                       const SweepOpts& opts,
                                       dicke::SweepResult* totals) {
  std::map<int, PerNData> out;
  for (int n_atoms : n_list) {
    dicke::ModelParams base{opts.omega, opts.omega0, n_atoms, 0.0};
    const dicke::SweepConfig cfg = make_sweep_config(opts);
    dicke::SweepResult res = dicke::run_sweep(base, cfg);
    if (!res.failures.empty()) {
      throw dicke::solver_error("sweep failures at N = " + std::to_string(n_atoms),
                                res.max_residual, 0);
    }
    if (totals) {
      totals->max_residual = std::max(totals->max_residual, res.max_residual);
      totals->total_iterations += res.total_iterations;
    }
    PerNData d;
    try {
      d.critical = dicke::analyze_sweep(base, cfg, res);
    } catch (const dicke::analysis_error& e) {
      throw dicke::analysis_error("N = " + std::to_string(n_atoms) + ": " + e.what());
    }
    d.points = std::move(res.points);
    out.emplace(n_atoms, std::move(d));
  }
  return out;
}

json fit_json(const dicke::ScalingFit& fit) {
  json out;
  out["kind"] = fit.kind == dicke::FitKind::LinearLogLog ? "linear-loglog" : "quadratic-semilog";
  out["coefficients"] = fit.coefficients;
  if (fit.exponent) {
    out["exponent"] = *fit.exponent;
    out["prefactor"] = std::pow(10.0, fit.coefficients[0]);
  }
  out["rsq"] = fit.rsq;
  out["residuals"] = fit.residuals;
  return out;
}

json critical_json(const dicke::CriticalPoint& c) {
  json out{{"n_atoms", c.n_atoms},
           {"gamma_max", c.gamma_max},
           {"f_min", c.f_min},
           {"chi_max", c.chi_max},
           {"delta_p_peak_gamma", c.delta_p_peak_gamma},
           {"degenerate", c.degenerate}};
  if (c.gamma_max_refined) out["gamma_max_refined"] = *c.gamma_max_refined;
  if (c.chi_max_refined) out["chi_max_refined"] = *c.chi_max_refined;
  return out;
}

int run_exponents(const std::vector<int>& n_list, const SweepOpts& opts,
                  const std::string& out, bool emit_plot) {
  if (n_list.size() < 4) {
    throw std::invalid_argument("--n-list needs at least 4 atom numbers for the fits");
  }
  json config = sweep_opts_json(opts);
  config["n-list"] = n_list;
  Manifest manifest("exponents", config);

  dicke::SweepResult totals;
  const std::map<int, PerNData> data = sweep_campaign(n_list, opts, &totals);

  std::vector<dicke::CriticalPoint> criticals;
  criticals.reserve(data.size());
  for (const auto& [n, d] : data) criticals.push_back(d.critical);

  const double gamma_c =
      dicke::ModelParams{opts.omega, opts.omega0, n_list.front(), 0.0}.critical_coupling();
  const dicke::ScalingFit gamma_fit = dicke::fit_gamma_exponent(criticals, gamma_c);
  const dicke::ScalingFit chi_fit = dicke::fit_chi_exponent(criticals);
  const dicke::ScalingFit fmin_fit = dicke::fit_fmin_quadratic(criticals);

  json report;
  report["gamma_c"] = gamma_c;
  report["criticals"] = json::array();
  for (const auto& c : criticals) report["criticals"].push_back(critical_json(c));
  report["gamma_exponent_fit"] = fit_json(gamma_fit);
  report["chi_exponent_fit"] = fit_json(chi_fit);
  report["fmin_quadratic_fit"] = fit_json(fmin_fit);
  dicke::io::write_file(out, report.dump(2) + "\n");
  manifest.add_output(out);

  const std::string stem = stem_path(out);
  const std::string crit_csv = stem + "_criticals.csv";
  dicke::io::write_file(crit_csv, dicke::io::criticals_csv(criticals));
  manifest.add_output(crit_csv);

  if (emit_plot) {
    const struct { const char* which; const dicke::ScalingFit* fit; } figs[] = {
        {"gamma", &gamma_fit}, {"chi", &chi_fit}, {"fmin", &fmin_fit}};
    for (const auto& f : figs) {
      const std::string path = stem + "_" + f.which + "_fit.gp";
      dicke::io::write_file(path, dicke::io::fit_plot_script(crit_csv, *f.fit, f.which));
      manifest.add_output(path);
    }
  }
  manifest.set("solver", solver_summary(totals));
  manifest.write(out);

  std::printf("gamma exponent: %.6f (prefactor %.6f, rsq %.8f)\n", *gamma_fit.exponent,
              std::pow(10.0, gamma_fit.coefficients[0]), gamma_fit.rsq);
  std::printf("chi exponent:   %.6f (prefactor %.6f, rsq %.8f)\n", *chi_fit.exponent,
              std::pow(10.0, chi_fit.coefficients[0]), chi_fit.rsq);
  std::printf("log10(F_min) quadratic: c0=%.8g c1=%.8g c2=%.8g (rsq %.8f)\n",
              fmin_fit.coefficients[0], fmin_fit.coefficients[1], fmin_fit.coefficients[2],
              fmin_fit.rsq);
  return kExitOk;
}

// ------------------------------------------------------------- collapse ----

int run_collapse(const std::vector<int>& n_list, std::vector<std::string> inputs,
                 double nu, const SweepOpts& opts, bool have_sweep_flags,
                 const std::string& out, bool emit_plot) {
  if (n_list.empty()) throw std::invalid_argument("--n-list is required");
  if (!(nu > 0.0)) throw std::invalid_argument("--nu must be > 0");

  json config = have_sweep_flags ? sweep_opts_json(opts) : json::object();
  config["n-list"] = n_list;
  config["nu"] = nu;
  if (!inputs.empty()) config["inputs"] = inputs;
  Manifest manifest("collapse", config);

  std::map<int, std::vector<dicke::ScanPoint>> scans;
  dicke::SweepResult totals;
  if (!inputs.empty()) {
    if (inputs.size() != n_list.size()) {
      throw std::invalid_argument("--inputs and --n-list must pair up one to one");
    }
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      if (!fs::exists(inputs[i])) {
        throw std::invalid_argument("missing sweep data: " + inputs[i]);
      }
      scans[n_list[i]] = dicke::io::parse_scan_csv(dicke::io::read_file(inputs[i]));
    }
  } else {
    if (!have_sweep_flags) {
      throw std::invalid_argument("collapse needs either --inputs or inline sweep flags");
    }
    const std::map<int, PerNData> data = sweep_campaign(n_list, opts, &totals);
    for (const auto& [n, d] : data) scans[n] = d.points;
  }

  std::map<int, dicke::CriticalPoint> criticals;
  dicke::SweepConfig locate_cfg;  // grid-only location; refinement never applies here
  for (const auto& [n, points] : scans) {
    criticals[n] = dicke::locate_critical(points, locate_cfg, n);
  }

  int skipped = 0;
  const std::vector<dicke::CollapsePoint> collapse =
      dicke::build_collapse(scans, criticals, nu, &skipped);
  if (skipped > 0) {
    std::cerr << "collapse: skipped " << skipped << " points with chi <= 0\n";
  }
  dicke::io::write_file(out, dicke::io::collapse_csv(collapse));
  manifest.add_output(out);

  const dicke::CollapseSpread spread = dicke::collapse_spread(collapse);
  std::printf("collapse: nu=%.6f spread=%.6g range=%.6g ratio=%.6g window=[%.3f,%.3f]\n",
              nu, spread.spread, spread.range, spread.ratio, spread.x_lo, spread.x_hi);

  if (emit_plot) {
    const std::string path = stem_path(out) + ".gp";
    dicke::io::write_file(path, dicke::io::collapse_plot_script(out, n_list));
    manifest.add_output(path);
  }
  manifest.set("spread", json{{"spread", spread.spread},
                              {"range", spread.range},
                              {"ratio", spread.ratio},
                              {"skipped_points", skipped}});
  manifest.set("solver", solver_summary(totals));
  manifest.write(out);
  return kExitOk;
}

// ------------------------------------------------------------- converge ----

int run_converge(int n_atoms, double gamma, double tolerance, int nmax_start,
                 int nmax_ceiling, double omega, double omega0,
                 const std::string& out) {
  dicke::ModelParams params{omega, omega0, n_atoms, gamma};
  const dicke::NmaxSearch search =
      dicke::find_minimal_nmax(params, tolerance, nmax_start, nmax_ceiling);

  for (const auto& [nmax, dp] : search.ladder) {
    std::printf("n_max=%-3d delta_p=%s\n", nmax, dicke::io::g17(dp).c_str());
  }
  if (!out.empty()) {
    json report{{"n_atoms", n_atoms},
                {"gamma", gamma},
                {"tolerance", tolerance},
                {"converged", search.converged},
                {"n_max", search.n_max},
                {"ladder", json::array()}};
    for (const auto& [nmax, dp] : search.ladder) {
      report["ladder"].push_back({{"n_max", nmax}, {"delta_p", dp}});
    }
    dicke::io::write_file(out, report.dump(2) + "\n");
  }
  if (!search.converged) {
    std::cerr << "converge: ceiling " << nmax_ceiling << " reached without meeting "
              << tolerance << "\n";
    return kExitNoConvergence;
  }
  std::printf("minimal n_max = %d\n", search.n_max);
  return kExitOk;
}

// --------------------------------------------------------- oracle-check ----

int run_oracle_check(int n_atoms, const std::vector<double>& gamma_list, int cutoff,
                     int nmax, double omega, double omega0, const std::string& out) {
  if (n_atoms > 12) {
    throw std::invalid_argument("oracle-check is guarded to n_atoms <= 12");
  }
  if (gamma_list.empty()) throw std::invalid_argument("--gamma-list is required");

  bool pass = true;
  json rows = json::array();
  for (double gamma : gamma_list) {
    dicke::ModelParams params{omega, omega0, n_atoms, gamma};
    const dicke::FockGroundState fock =
        cutoff > 0 ? dicke::fock_ground_state(params, cutoff)
                   : dicke::fock_ground_state_auto(params);
    const dicke::WaveFunction ecs = dicke::ground_state_ecs(params, nmax);
    const Eigen::VectorXd converted = dicke::ecs_to_fock(ecs, fock.photon_cutoff);
    const double overlap = std::abs(fock.vector.dot(converted));
    const double delta = std::abs(fock.energy - ecs.energy);
    const bool ok = delta <= 1e-9;
    pass = pass && ok;
    std::printf("gamma=%-8g E_fock=%.12f E_ecs=%.12f delta=%.3e overlap=%.12f %s\n",
                gamma, fock.energy, ecs.energy, delta, overlap, ok ? "ok" : "FAIL");
    rows.push_back({{"gamma", gamma},
                    {"energy_fock", fock.energy},
                    {"energy_ecs", ecs.energy},
                    {"energy_delta", delta},
                    {"overlap", overlap},
                    {"cutoff", fock.photon_cutoff},
                    {"ok", ok}});
  }
  if (!out.empty()) {
    json report{{"n_atoms", n_atoms}, {"nmax", nmax}, {"pass", pass}, {"rows", rows}};
    dicke::io::write_file(out, report.dump(2) + "\n");
  }
  std::printf("oracle-check: %s\n", pass ? "PASS" : "FAIL");
  return pass ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact-diagonalization toolkit for ground-state criticality of the Dicke model"};
  app.set_version_flag("--version", dicke::kVersion);
  app.require_subcommand(1);

  // scan
  auto* scan = app.add_subcommand("scan", "Gamma scan at fixed atom number -> CSV");
  int scan_n = 0;
  SweepOpts scan_opts;
  std::string scan_out = "scan.csv";
  bool scan_plot = false;
  scan->add_option("--n-atoms", scan_n, "Number of atoms")->required();
  add_sweep_options(scan, scan_opts);
  scan->add_option("--out", scan_out, "Output CSV path");
  scan->add_flag("--emit-plot", scan_plot, "Write gnuplot scripts next to the CSV");
  std::string config_path;
  scan->add_option("--config", config_path, "Flat key=value config file");

  // exponents
  auto* expo = app.add_subcommand("exponents", "Critical-exponent fits across atom numbers");
  std::vector<int> expo_n;
  SweepOpts expo_opts;
  std::string expo_out = "exponents.json";
  bool expo_plot = false;
  expo->add_option("--n-list", expo_n, "Atom numbers (comma separated)")
      ->required()
      ->delimiter(',');
  add_sweep_options(expo, expo_opts);
  expo->add_option("--out", expo_out, "Output report path");
  expo->add_flag("--emit-plot", expo_plot, "Write gnuplot scripts next to the report");
  expo->add_option("--config", config_path, "Flat key=value config file");

  // collapse
  auto* coll = app.add_subcommand("collapse", "Universal specific-susceptibility collapse");
  std::vector<int> coll_n;
  std::vector<std::string> coll_inputs;
  double coll_nu = 2.0 / 3.0;
  SweepOpts coll_opts;
  std::string coll_out = "collapse.csv";
  bool coll_plot = false;
  coll->add_option("--n-list", coll_n, "Atom numbers")->required()->delimiter(',');
  coll->add_option("--nu", coll_nu, "Scaling exponent for the x axis");
  coll->add_option("--inputs", coll_inputs, "Prior scan CSVs, one per atom number")
      ->delimiter(',');
  auto* coll_gmin = coll->add_option("--gamma-min", coll_opts.gamma_min, "Scan lower bound");
  coll->add_option("--gamma-max", coll_opts.gamma_max, "Scan upper bound");
  coll->add_option("--dgamma", coll_opts.dgamma, "Grid step");
  coll->add_option("--nmax", coll_opts.nmax, "Truncation");
  coll->add_option("--omega", coll_opts.omega, "Field frequency");
  coll->add_option("--omega0", coll_opts.omega0, "Atomic level splitting");
  coll->add_option("--workers", coll_opts.workers, "Worker threads (0: all cores)");
  coll->add_option("--tol", coll_opts.tol, "Eigensolver residual tolerance");
  coll->add_option("--seed", coll_opts.seed, "Eigensolver start-vector seed");
  coll->add_option("--dim-ceiling", coll_opts.dim_ceiling, "Basis dimension ceiling");
  coll->add_option("--out", coll_out, "Output CSV path");
  coll->add_flag("--emit-plot", coll_plot, "Write a gnuplot overlay script");
  coll->add_option("--config", config_path, "Flat key=value config file");

  // converge
  auto* conv = app.add_subcommand("converge", "Smallest n_max meeting the precision tolerance");
  int conv_n = 0;
  double conv_gamma = 0.0, conv_tol = 1e-8, conv_omega = 1.0, conv_omega0 = 1.0;
  int conv_start = 0, conv_ceiling = 64;
  std::string conv_out;
  conv->add_option("--n-atoms", conv_n, "Number of atoms")->required();
  conv->add_option("--gamma", conv_gamma, "Coupling strength")->required();
  conv->add_option("--tolerance", conv_tol, "Precision tolerance on delta_p");
  conv->add_option("--nmax-start", conv_start, "First candidate n_max");
  conv->add_option("--nmax-ceiling", conv_ceiling, "Largest candidate n_max");
  conv->add_option("--omega", conv_omega, "Field frequency");
  conv->add_option("--omega0", conv_omega0, "Atomic level splitting");
  conv->add_option("--out", conv_out, "Optional JSON report path");
  conv->add_option("--config", config_path, "Flat key=value config file");

  // oracle-check
  auto* oracle = app.add_subcommand("oracle-check",
                                    "Cross-validate the ECS build against the Fock-basis build");
  int oracle_n = 0, oracle_cutoff = 0, oracle_nmax = 40;
  double oracle_omega = 1.0, oracle_omega0 = 1.0;
  std::vector<double> oracle_gammas;
  std::string oracle_out;
  oracle->add_option("--n-atoms", oracle_n, "Number of atoms (<= 12)")->required();
  oracle->add_option("--gamma-list", oracle_gammas, "Couplings to check")
      ->required()
      ->delimiter(',');
  oracle->add_option("--cutoff", oracle_cutoff, "Photon cutoff (0: automatic)");
  oracle->add_option("--nmax", oracle_nmax, "ECS truncation");
  oracle->add_option("--omega", oracle_omega, "Field frequency");
  oracle->add_option("--omega0", oracle_omega0, "Atomic level splitting");
  oracle->add_option("--out", oracle_out, "Optional JSON report path");
  oracle->add_option("--config", config_path, "Flat key=value config file");

  std::vector<std::string> args;
  try {
    args = expand_args(argc, argv);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  std::reverse(args.begin(), args.end());  // CLI11 takes args back to front
  try {
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (scan->parsed()) return run_scan(scan_n, scan_opts, scan_out, scan_plot);
    if (expo->parsed()) return run_exponents(expo_n, expo_opts, expo_out, expo_plot);
    if (coll->parsed()) {
      return run_collapse(coll_n, coll_inputs, coll_nu, coll_opts,
                          coll_gmin->count() > 0, coll_out, coll_plot);
    }
    if (conv->parsed()) {
      return run_converge(conv_n, conv_gamma, conv_tol, conv_start, conv_ceiling,
                          conv_omega, conv_omega0, conv_out);
    }
    if (oracle->parsed()) {
      return run_oracle_check(oracle_n, oracle_gammas, oracle_cutoff, oracle_nmax,
                              oracle_omega, oracle_omega0, oracle_out);
    }
  } catch (const dicke::solver_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const dicke::analysis_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const dicke::fit_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const dicke::dimension_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitUsage;
}
