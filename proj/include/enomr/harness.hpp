#pragma once

// Experiment presets, error norms, convergence ladders, shock metrics and
// timing comparisons.

#include <array>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "enomr/scalar.hpp"
#include "enomr/scheme.hpp"
#include "enomr/solver.hpp"

namespace enomr {

enum class Problem {
  AdvectSinAlpha,
  AdvectJiangShu,
  BurgersSmooth,
  BurgersShock,
  LaxTube,
  TitarevToro,
  RiemannConfig1,
  RiemannConfig2,
  DoubleMach,
  RayleighTaylor,
};

/// sin-alpha, jiang-shu, burgers-smooth, burgers-shock, lax, titarev-toro, rp1, rp2, dmr, rt
std::string_view to_string(Problem p);
Problem parse_problem(std::string_view name);
bool is_2d(Problem p);
bool has_exact_solution(Problem p);

struct ExperimentConfig {
  Problem problem = Problem::AdvectSinAlpha;
  Scheme scheme = Scheme::eno_mr(5);
  Precision precision = Precision::Double;
  int n = 0;   // 1D mesh parameter, h = 1/n (0: preset default)
  int nx = 0;  // 2D points per axis (0: preset default)
  int ny = 0;
  double lambda = 1.0;
  double alpha = 3.0;  // exponent of sin^alpha
  double cfl = 0.3;
  std::optional<double> tend;
  int threads = 1;
  std::optional<long> max_steps;  // stop early (timing runs)
};

/// Resolved preset parameters (for manifests and reports).
struct PresetInfo {
  std::string domain;
  std::string boundary;
  std::string time_rule;
  double tend = 0;
  int n = 0, nx = 0, ny = 0;
};
PresetInfo describe(const ExperimentConfig& cfg);

template <class Real>
struct RunResult {
  Grid<Real> grid;
  int nvars = 1;
  std::vector<std::string> names;
  std::vector<Real> initial;
  std::vector<Real> u;
  std::vector<Real> exact;  // empty when no exact solution is known
  Real t{};
  long steps = 0;
  double wall_seconds = 0;
  // Sum of U over the grid times the cell volume: initial, final, and the
  // amount that left through the boundary.
  std::vector<Real> mass_initial, mass_final, mass_outflow;
  bool conservative = true;  // no source term
  double asymmetry = 0;      // RT mirror defect, or RP diagonal defect
};

template <class Real>
RunResult<Real> run_experiment(const ExperimentConfig& cfg);

extern template RunResult<double> run_experiment<double>(const ExperimentConfig&);
extern template RunResult<DoubleDouble> run_experiment<DoubleDouble>(const ExperimentConfig&);

/// max_k |M_final + outflow - M_initial| / max(|M_initial|) over components.
template <class Real>
double conservation_defect(const RunResult<Real>& r) {
  double scale = 0, worst = 0;
  for (std::size_t k = 0; k < r.mass_initial.size(); ++k) scale = std::max(scale, std::abs(to_double(r.mass_initial[k])));
  for (std::size_t k = 0; k < r.mass_initial.size(); ++k) {
    const Real d = r.mass_final[k] + r.mass_outflow[k] - r.mass_initial[k];
    worst = std::max(worst, std::abs(to_double(d)));
  }
  return worst / std::max(scale, 1e-300);
}

/// Largest |U(i,j) - P U(j,i)| with P swapping the two momenta (square grids).
template <class Real>
double diagonal_asymmetry(const Grid<Real>& g, const std::vector<Real>& u) {
  double worst = 0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const Real* a = u.data() + g.interior(i, j) * 4;
      const Real* b = u.data() + g.interior(j, i) * 4;
      const int perm[4] = {0, 2, 1, 3};
      for (int c = 0; c < 4; ++c) worst = std::max(worst, std::abs(to_double(Real(a[c] - b[perm[c]]))));
    }
  return worst;
}

struct ErrorNorms {
  double l1 = 0;
  double linf = 0;
};

/// l1 = mean |diff|, linf = max |diff|, accumulated in working precision.
template <class Real>
ErrorNorms error_norms(std::span<const Real> numeric, std::span<const Real> exact) {
  using std::abs;
  if (numeric.size() != exact.size()) throw std::invalid_argument("error_norms: size mismatch");
  if (numeric.empty()) return {};
  Real sum(0), mx(0);
  for (std::size_t i = 0; i < numeric.size(); ++i) {
    const Real d = abs(numeric[i] - exact[i]);
    sum += d;
    if (d > mx) mx = d;
  }
  return {to_double(Real(sum / Real(static_cast<double>(numeric.size())))), to_double(mx)};
}

struct ConvergenceRow {
  int n = 0;  // h = 1/n
  double l1 = 0, linf = 0;
  std::optional<double> order_l1, order_linf;
  bool below_floor = false;
};

struct ConvergenceTable {
  ExperimentConfig config;
  double floor = 0;  // errors below this are rounding-dominated
  std::vector<ConvergenceRow> rows;
  double seconds = 0;
};

/// Error level below which the run is dominated by rounding: 100 eps lambda.
double precision_floor(Precision p, double scale);

ConvergenceTable run_convergence_ladder(const ExperimentConfig& base, std::span<const int> meshes);

/// Least-squares slope of log(l1) against log(h) over rows above the floor.
std::optional<double> fitted_order(const ConvergenceTable& t);

/// Columns: h,L1,order,Linf,order,floor
void write_convergence_csv(std::ostream& os, const ConvergenceTable& t);

struct ShockMetrics {
  double total_variation = 0;
  double overshoot = 0;
  double undershoot = 0;
};

template <class Real>
ShockMetrics shock_quality_metrics(std::span<const Real> field, double ref_min, double ref_max) {
  ShockMetrics m;
  for (std::size_t i = 0; i < field.size(); ++i) {
    const double v = to_double(field[i]);
    if (i + 1 < field.size()) m.total_variation += std::abs(to_double(Real(field[i + 1] - field[i])));
    m.overshoot = std::max(m.overshoot, v - ref_max);
    m.undershoot = std::max(m.undershoot, ref_min - v);
  }
  return m;
}

struct TimingRow {
  std::string scheme;
  double seconds_per_step = 0;
  double normalized = 0;
};

/// Median-of-k wall time per step for each scheme on the same preset,
/// normalized to WENO-AO(5,3) when it is in the list, else to the first.
std::vector<TimingRow> timing_comparison(const ExperimentConfig& base, std::span<const Scheme> schemes,
                                         int repetitions, long steps);

void write_timing_csv(std::ostream& os, std::span<const TimingRow> rows);

/// Exact entropy solution of the smooth Burgers problem at time t.
template <class Real>
Real burgers_exact(const Real& x, const Real& t, double lambda);

extern template double burgers_exact<double>(const double&, const double&, double);
extern template DoubleDouble burgers_exact<DoubleDouble>(const DoubleDouble&, const DoubleDouble&, double);

/// The four-shape advection profile (unit amplitude) on [-1, 1].
double jiang_shu_profile(double x);

}  // namespace enomr
