// enomr: batch front end for coefficient validation, convergence ladders,
// 1D/2D preset runs and timing tables.
//
// Exit codes: 0 ok, 1 internal, 2 config, 3 runtime (NaN or non-physical
// state), 4 precision floor under --strict, 5 io, 6 coefficient mismatch.
// On failure one line "error: <category>: <message>" goes to stderr.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "enomr/coeff.hpp"
#include "enomr/harness.hpp"
#include "enomr/physics.hpp"
#include "enomr/timeint.hpp"

#ifndef ENOMR_VERSION
#define ENOMR_VERSION "unknown"
#endif

namespace fs = std::filesystem;
using namespace enomr;
using json = nlohmann::ordered_json;

namespace {

struct Failure : std::runtime_error {
  Failure(std::string category, int code, const std::string& what)
      : std::runtime_error(what), category(std::move(category)), code(code) {}
  std::string category;
  int code;
};

struct Options {
  std::string out = "out";
  std::optional<int> threads;
  bool strict = false;
  std::string scheme = "eno-mr5";
  std::string precision = "double";
  std::string problem = "sin-alpha";
  double cfl = 0.3;
  int n = 0, nx = 0, ny = 0;
  std::optional<double> tend;
  double lambda = 1.0;
  double alpha = 3.0;
  std::vector<int> meshes{100, 200, 400, 800};
  std::vector<std::string> schemes{"weno-ao53", "eno-mr5", "weno-ao953", "eno-mr9"};
  int repetitions = 3;
  long steps = 5;
};

// Output directory with an ".incomplete" marker that is removed on success.
class OutputDir {
 public:
  explicit OutputDir(const std::string& path) : path_(path) {
    std::error_code ec;
    fs::create_directories(path_, ec);
    if (ec) throw Failure("io", 5, "cannot create " + path + ": " + ec.message());
    std::ofstream(path_ / ".incomplete") << "run did not finish\n";
  }
  std::ofstream open(const std::string& name) const {
    std::ofstream os(path_ / name);
    if (!os) throw Failure("io", 5, "cannot write " + (path_ / name).string());
    os.precision(17);
    return os;
  }
  void finish() const { fs::remove(path_ / ".incomplete"); }
  [[nodiscard]] const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

int resolve_threads(const Options& o) {
  if (o.threads) {
    if (*o.threads < 1) throw std::invalid_argument("--threads must be at least 1");
    return *o.threads;
  }
  return threads_from_env();
}

ExperimentConfig make_config(const Options& o, const std::string& problem) {
  ExperimentConfig c;
  c.problem = parse_problem(problem);
  c.scheme = Scheme::parse(o.scheme);
  c.precision = parse_precision(o.precision);
  c.n = o.n;
  c.nx = o.nx;
  c.ny = o.ny;
  c.lambda = o.lambda;
  c.alpha = o.alpha;
  c.cfl = o.cfl;
  c.tend = o.tend;
  c.threads = resolve_threads(o);
  return c;
}

json config_json(const ExperimentConfig& c) {
  const PresetInfo info = describe(c);
  json j;
  j["problem"] = to_string(c.problem);
  j["scheme"] = c.scheme.name();
  j["precision"] = to_string(c.precision);
  j["domain"] = info.domain;
  j["boundary"] = info.boundary;
  j["time_rule"] = info.time_rule;
  j["tend"] = info.tend;
  if (is_2d(c.problem)) {
    j["nx"] = info.nx;
    j["ny"] = info.ny;
  } else {
    j["n"] = info.n;
  }
  j["lambda"] = c.lambda;
  if (c.problem == Problem::AdvectSinAlpha) j["alpha"] = c.alpha;
  j["cfl"] = c.cfl;
  j["threads"] = c.threads;
  return j;
}

void write_manifest(const OutputDir& dir, const std::string& command, json config, json results) {
  json m;
  m["command"] = command;
  m["version"] = ENOMR_VERSION;
  m["precision"] = config.contains("precision") ? config["precision"] : json("exact");
  m["config"] = std::move(config);
  m["results"] = std::move(results);
  dir.open("manifest.json") << m.dump(2) << '\n';
}

int cmd_validate(const Options& o) {
  const OutputDir dir(o.out);
  const ValidationReport rep = validate_against_tables();
  write_report(std::cout, rep);
  {
    auto os = dir.open("report.txt");
    write_report(os, rep);
  }
  std::vector<CoefficientSet> sets;
  for (const Stencil& s : candidate_stencils()) sets.push_back(generate_coefficient_set(s));
  {
    auto os = dir.open("coefficients.csv");
    write_coefficients_csv(os, sets);
  }
  json results;
  results["stencils_checked"] = rep.stencils_checked;
  results["stencils_matched"] = rep.stencils_matched;
  results["published_errata"] = rep.errata();
  write_manifest(dir, "validate-coeffs", json::object(), results);
  if (!rep.consistent() || (o.strict && !rep.ok())) {
    throw Failure("coefficient-mismatch", 6,
                  std::to_string(rep.stencils_checked - rep.stencils_matched) + " stencils differ from the tables");
  }
  dir.finish();
  return 0;
}

int cmd_convergence(const Options& o) {
  const ExperimentConfig c = make_config(o, o.problem);
  if (o.meshes.empty()) throw std::invalid_argument("--meshes needs at least one value");
  const OutputDir dir(o.out);
  const ConvergenceTable t = run_convergence_ladder(c, o.meshes);
  write_convergence_csv(std::cout, t);
  {
    auto os = dir.open("convergence.csv");
    write_convergence_csv(os, t);
  }
  json results;
  results["floor"] = t.floor;
  if (auto fit = fitted_order(t)) results["fitted_order_l1"] = *fit;
  int below = 0;
  for (const auto& r : t.rows) below += r.below_floor ? 1 : 0;
  results["rows_below_floor"] = below;
  json cfg = config_json(c);
  cfg.erase("n");
  cfg["meshes"] = o.meshes;
  write_manifest(dir, "convergence", cfg, results);
  if (below > 0) {
    const std::string msg = std::to_string(below) + " rows reached the precision floor " + format_number(t.floor);
    if (o.strict) throw Failure("precision-floor", 4, msg);
    std::cerr << "warning: precision-floor: " << msg << '\n';
  }
  dir.finish();
  return 0;
}

// Field plus derived columns (pressure for Euler, exact solution when known).
template <class Real>
void write_profile(const OutputDir& dir, const std::string& file, const RunResult<Real>& r, double gamma) {
  const int nv = r.nvars;
  const bool euler = nv >= 3;
  const bool exact = !r.exact.empty();
  std::vector<std::string> names = r.names;
  if (euler) names.push_back("pressure");
  if (exact) names.push_back("exact");
  const int width = static_cast<int>(names.size());
  std::vector<Real> table;
  table.reserve(r.grid.cells() * width);
  for (std::size_t c = 0; c < r.grid.cells(); ++c) {
    const Real* u = r.u.data() + c * nv;
    table.insert(table.end(), u, u + nv);
    if (euler) table.push_back(euler_pressure(u, nv, Real(gamma)));
    if (exact) table.push_back(r.exact[c]);
  }
  auto os = dir.open(file);
  write_field_csv(os, r.grid, width, table, names);
}

template <class Real>
json run_and_write(const ExperimentConfig& c, const OutputDir& dir, const std::string& file) {
  const RunResult<Real> r = run_experiment<Real>(c);
  const double gamma = c.problem == Problem::RayleighTaylor ? 5.0 / 3.0 : 1.4;
  write_profile(dir, file, r, gamma);
  json results;
  results["t"] = to_double(r.t);
  results["steps"] = r.steps;
  if (!r.exact.empty()) {
    const ErrorNorms e = error_norms<Real>(r.u, r.exact);
    results["l1"] = e.l1;
    results["linf"] = e.linf;
  }
  if (r.conservative) results["conservation_defect"] = conservation_defect(r);
  if (is_2d(c.problem)) results["asymmetry"] = r.asymmetry;
  return results;
}

int cmd_run(const Options& o, bool two_d) {
  const ExperimentConfig c = make_config(o, o.problem);
  if (is_2d(c.problem) != two_d) {
    throw std::invalid_argument("preset " + o.problem + (two_d ? " is not 2D (use run1d)" : " is 2D (use run2d)"));
  }
  const OutputDir dir(o.out);
  const std::string file = two_d ? "field.csv" : "profile.csv";
  const json results = c.precision == Precision::Double ? run_and_write<double>(c, dir, file)
                                                        : run_and_write<DoubleDouble>(c, dir, file);
  write_manifest(dir, two_d ? "run2d" : "run1d", config_json(c), results);
  std::cout << "wrote " << (dir.path() / file).string() << " (" << results["steps"] << " steps, t = "
            << results["t"] << ")\n";
  dir.finish();
  return 0;
}

int cmd_timing(const Options& o) {
  ExperimentConfig c = make_config(o, o.problem);
  std::vector<Scheme> schemes;
  for (const auto& s : o.schemes) schemes.push_back(Scheme::parse(s));
  const OutputDir dir(o.out);
  const auto rows = timing_comparison(c, schemes, o.repetitions, o.steps);
  write_timing_csv(std::cout, rows);
  {
    auto os = dir.open("timing.csv");
    write_timing_csv(os, rows);
  }
  json cfg = config_json(c);
  cfg.erase("scheme");
  cfg["schemes"] = o.schemes;
  cfg["repetitions"] = o.repetitions;
  cfg["steps"] = o.steps;
  write_manifest(dir, "timing", cfg, json::object());
  dir.finish();
  return 0;
}

void add_run_flags(CLI::App* sub, Options& o, bool scheme = true) {
  if (scheme) {
    sub->add_option("--scheme", o.scheme, "eno-mr5|eno-mr9|eno-mr13|eno-mr17|weno-ao53|weno-ao953");
  }
  sub->add_option("--precision", o.precision, "double|extended")
      ->check(CLI::IsMember({"double", "extended"}));
  sub->add_option("--cfl", o.cfl, "CFL number for wave-speed time steps");
  sub->add_option("--tend", o.tend, "end time (default: preset)");
  sub->add_option("--lambda", o.lambda, "data scale factor");
  sub->add_option("--alpha", o.alpha, "exponent of sin^alpha");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ENO-MR / WENO-AO experiment runner"};
  app.set_version_flag("--version", std::string(ENOMR_VERSION));
  app.set_config("--config", "", "INI file; sections name subcommands, keys mirror flags");
  app.require_subcommand(1);
  Options o;
  app.add_option("--out", o.out, "output directory");
  app.add_option("--threads", o.threads, "worker threads (default: ENOMR_THREADS or 1)");
  app.add_flag("--strict", o.strict, "treat precision-floor rows and published errata as errors");

  auto* validate = app.add_subcommand("validate-coeffs", "regenerate all coefficients and compare with the tables");

  auto* conv = app.add_subcommand("convergence", "mesh-refinement ladder against the exact solution");
  conv->add_option("--problem", o.problem, "sin-alpha|jiang-shu|burgers-smooth");
  conv->add_option("--meshes", o.meshes, "1/h values, e.g. 100,200,400")->delimiter(',');
  add_run_flags(conv, o);

  const std::string presets1 = "sin-alpha|jiang-shu|burgers-smooth|burgers-shock|lax|titarev-toro";
  auto* run1 = app.add_subcommand("run1d", "run a 1D preset and write the final profile");
  run1->add_option("--preset", o.problem, presets1)->required();
  run1->add_option("--n", o.n, "mesh parameter, h = 1/n");
  add_run_flags(run1, o);

  auto* run2 = app.add_subcommand("run2d", "run a 2D preset and write the final field");
  run2->add_option("--preset", o.problem, "rp1|rp2|dmr|rt")->required();
  run2->add_option("--nx", o.nx, "points along x");
  run2->add_option("--ny", o.ny, "points along y");
  add_run_flags(run2, o);

  auto* timing = app.add_subcommand("timing", "wall time per step, normalized to weno-ao53");
  timing->add_option("--preset", o.problem, presets1 + "|rp1|rp2|dmr|rt")->required();
  timing->add_option("--schemes", o.schemes, "schemes to compare")->delimiter(',');
  timing->add_option("--repetitions", o.repetitions, "runs per scheme (median is reported)");
  timing->add_option("--steps", o.steps, "time steps per run");
  timing->add_option("--n", o.n, "1D mesh parameter");
  timing->add_option("--nx", o.nx, "points along x");
  timing->add_option("--ny", o.ny, "points along y");
  add_run_flags(timing, o, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: config: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*validate) return cmd_validate(o);
    if (*conv) return cmd_convergence(o);
    if (*run1) return cmd_run(o, false);
    if (*run2) return cmd_run(o, true);
    if (*timing) return cmd_timing(o);
  } catch (const Failure& e) {
    std::cerr << "error: " << e.category << ": " << e.what() << '\n';
    return e.code;
  } catch (const NumericalBlowup& e) {
    std::cerr << "error: runtime-nan: " << e.what() << '\n';
    return 3;
  } catch (const NonPhysicalState& e) {
    std::cerr << "error: runtime-nan: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: config: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
