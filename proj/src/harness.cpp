#include "enomr/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "enomr/timeint.hpp"

namespace enomr {

namespace {

struct ProblemName {
  Problem problem;
  std::string_view name;
};

constexpr ProblemName kProblemNames[] = {
    {Problem::AdvectSinAlpha, "sin-alpha"},   {Problem::AdvectJiangShu, "jiang-shu"},
    {Problem::BurgersSmooth, "burgers-smooth"}, {Problem::BurgersShock, "burgers-shock"},
    {Problem::LaxTube, "lax"},                {Problem::TitarevToro, "titarev-toro"},
    {Problem::RiemannConfig1, "rp1"},         {Problem::RiemannConfig2, "rp2"},
    {Problem::DoubleMach, "dmr"},             {Problem::RayleighTaylor, "rt"},
};

template <class Real>
Real ipow(Real x, int a) {
  Real out(1);
  for (int k = 0; k < a; ++k) out *= x;
  return out;
}

template <class Real>
Real pi() {
  return ScalarTraits<Real>::pi();
}

int default_n(Problem p) {
  switch (p) {
    case Problem::AdvectSinAlpha:
      return 100;
    case Problem::AdvectJiangShu:
      return 200;
    case Problem::BurgersSmooth:
    case Problem::BurgersShock:
      return 64;
    case Problem::LaxTube:
      return 100;
    case Problem::TitarevToro:
      return 150;
    default:
      return 0;
  }
}

double default_tend(Problem p, double lambda) {
  switch (p) {
    case Problem::AdvectSinAlpha:
      return 2.0;
    case Problem::AdvectJiangShu:
      return 20.0;
    case Problem::BurgersSmooth:
      return 0.1 / lambda;
    case Problem::BurgersShock:
      return 2.0 / lambda;
    case Problem::LaxTube:
      return 0.26;
    case Problem::TitarevToro:
      return 5.0;
    case Problem::RiemannConfig1:
    case Problem::RiemannConfig2:
      return 1.0;
    case Problem::DoubleMach:
      return 0.2;
    case Problem::RayleighTaylor:
      return 1.95;
  }
  return 0;
}

// 2D point counts: explicit values win, a single given axis fixes the other
// through the preset's aspect ratio.
std::pair<int, int> points_2d(const ExperimentConfig& cfg) {
  int nx = cfg.nx, ny = cfg.ny;
  switch (cfg.problem) {
    case Problem::RiemannConfig1:
    case Problem::RiemannConfig2:
      if (nx == 0 && ny == 0) nx = ny = 801;
      if (nx == 0) nx = ny;
      if (ny == 0) ny = nx;
      break;
    case Problem::DoubleMach:
      if (nx == 0 && ny == 0) nx = 1201, ny = 301;
      if (nx == 0) nx = 4 * (ny - 1) + 1;
      if (ny == 0) ny = (nx - 1) / 4 + 1;
      break;
    case Problem::RayleighTaylor:
      if (nx == 0 && ny == 0) nx = 129, ny = 513;
      if (nx == 0) nx = (ny - 1) / 4 + 1;
      if (ny == 0) ny = 4 * (nx - 1) + 1;
      break;
    default:
      break;
  }
  return {nx, ny};
}

int order_of(const Scheme& s) { return s.order(); }

template <class Real, class Model>
struct Setup {
  Model model;
  Grid<Real> grid;
  BoundaryConditions<Real> bc;
  std::vector<Real> u0;
  Real tend{};
  bool lssprk = false;
  std::optional<Real> fixed_dt;
  std::function<std::vector<Real>(const Real&)> exact;
  std::vector<std::string> names;
  std::optional<Real> symmetry_plane;
  bool diagonal = false;
};

template <class Real, class Model>
RunResult<Real> simulate(const ExperimentConfig& cfg, Setup<Real, Model> s) {
  constexpr int nv = Model::kVars;
  Solver<Real, Model> solver(s.model, cfg.scheme, s.grid, s.bc, cfg.threads);
  const Grid<Real>& g = solver.grid();

  RunResult<Real> res;
  res.grid = g;
  res.nvars = nv;
  res.names = s.names;
  res.initial = s.u0;
  res.conservative = !s.model.has_source();
  std::vector<Real> u = s.u0;
  (void)solver.max_wave_speed(u);  // rejects non-physical initial data

  const Real vol = g.dims == 2 ? g.hx * g.hy : g.hx;
  auto mass = [&](const std::vector<Real>& v) {
    std::vector<Real> m(nv, Real(0));
    for (std::size_t c = 0; c < g.cells(); ++c)
      for (int k = 0; k < nv; ++k) m[k] += v[c * nv + k];
    for (auto& x : m) x *= vol;
    return m;
  };
  res.mass_initial = mass(u);
  res.mass_outflow.assign(nv, Real(0));

  LssprkTableau tab;
  if (s.lssprk) tab = lssprk_tableau(std::min(order_of(cfg.scheme) + 1, 18));
  // SSP-RK3 as u + dt (L0/6 + L1/6 + 2 L2/3)
  const std::array<Real, 3> weights{Real(1) / Real(6), Real(1) / Real(6), Real(2) / Real(3)};
  int stage = 0;
  Real dt_now(0);
  auto rhs = [&](const std::vector<Real>& x, const Real& tt, std::vector<Real>& d) {
    solver.rhs(x, tt, d);
    if (!s.lssprk) {
      const auto& of = solver.last_outflow();
      for (int k = 0; k < nv; ++k) res.mass_outflow[k] += dt_now * weights[stage % 3] * of[k];
    }
    ++stage;
  };

  long nfixed = 0;
  bool clip_last = false;
  if (s.fixed_dt) {
    const double ratio = to_double(Real(s.tend / *s.fixed_dt));
    const double whole = std::round(ratio);
    if (std::abs(ratio - whole) < 1e-9 * std::max(1.0, whole)) {
      nfixed = static_cast<long>(whole);
    } else {
      nfixed = static_cast<long>(std::ceil(ratio));
      clip_last = true;
    }
  }

  const Real hmin = g.dims == 2 ? std::min(g.hx, g.hy) : g.hx;
  const Real cfl(cfg.cfl);
  RkWorkspace<Real> ws;
  Real t(0);
  long steps = 0;
  const auto start = std::chrono::steady_clock::now();
  while (true) {
    if (cfg.max_steps && steps >= *cfg.max_steps) break;
    Real dt;
    bool last = false;
    if (s.fixed_dt) {
      if (steps >= nfixed) break;
      dt = *s.fixed_dt;
      last = steps == nfixed - 1;
      if (last && clip_last) dt = s.tend - Real(static_cast<double>(steps)) * *s.fixed_dt;
    } else {
      if (!(t < s.tend)) break;
      const Real a = solver.max_wave_speed(u);
      dt = cfl * hmin / a;
      if (!(t + dt < s.tend)) {
        dt = s.tend - t;
        last = true;
      }
    }
    dt_now = dt;
    stage = 0;
    if (s.lssprk) {
      lssprk_step(u, t, dt, rhs, tab, ws);
    } else {
      ssp_rk3_step(u, t, dt, rhs, ws);
    }
    ++steps;
    if (last) {
      t = s.tend;
    } else if (s.fixed_dt) {
      t = Real(static_cast<double>(steps)) * *s.fixed_dt;
    } else {
      t += dt;
    }
    if (s.symmetry_plane) enforce_symmetry(g, nv, u, *s.symmetry_plane, 1);
  }
  res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  res.t = t;
  res.steps = steps;
  res.mass_final = mass(u);
  if (s.exact) res.exact = s.exact(t);
  if constexpr (nv == 4) {
    if (s.symmetry_plane) res.asymmetry = asymmetry(g, nv, u, 1);
    if (s.diagonal) res.asymmetry = diagonal_asymmetry(g, u);
  }
  res.u = std::move(u);
  return res;
}

template <class Real>
Real sin_alpha(const Real& x, double alpha, double lambda) {
  using std::pow;
  using std::sin;
  const Real s = sin(pi<Real>() * x);
  const double whole = std::round(alpha);
  if (whole == alpha && alpha >= 0 && alpha <= 64) return Real(lambda) * ipow(s, static_cast<int>(whole));
  return Real(lambda) * pow(s, Real(alpha));
}

template <class Real>
RunResult<Real> run_advection(const ExperimentConfig& cfg, int n, const Real& tend) {
  Setup<Real, AdvectionModel<Real>> s;
  s.grid = periodic_grid_1d(Real(-1), Real(1), 2 * n, cfg.scheme.r);
  s.bc = BoundaryConditions<Real>::all(BcKind::Periodic);
  s.tend = tend;
  s.lssprk = true;
  s.fixed_dt = s.grid.hx;
  s.names = {"u"};
  const Grid<Real> g = s.grid;
  const double lambda = cfg.lambda, alpha = cfg.alpha;
  const bool composite = cfg.problem == Problem::AdvectJiangShu;
  auto profile = [=](const Real& x) -> Real {
    if (composite) {
      double xd = to_double(x);
      xd -= 2.0 * std::floor((xd + 1.0) / 2.0);
      return Real(lambda) * Real(jiang_shu_profile(xd));
    }
    return sin_alpha(x, alpha, lambda);
  };
  for (int i = 0; i < g.nx; ++i) s.u0.push_back(profile(g.x(i)));
  s.exact = [=](const Real& t) {
    std::vector<Real> e;
    for (int i = 0; i < g.nx; ++i) e.push_back(profile(g.x(i) - t));
    return e;
  };
  return simulate(cfg, std::move(s));
}

template <class Real>
Real burgers_dt(const Scheme& sc, const Real& h, double lambda) {
  using std::pow;
  const int order = sc.order();
  Real dt;
  if (order <= 5) {
    dt = pow(h, Real(5) / Real(3));
  } else if (order <= 9) {
    dt = Real(100) * h * h * h;
  } else if (order <= 13) {
    dt = Real(1e4) * pow(h, Real(13) / Real(3));
  } else {
    dt = Real(1e6) * pow(h, Real(17) / Real(3));
  }
  return dt / Real(lambda);
}

template <class Real>
RunResult<Real> run_burgers(const ExperimentConfig& cfg, int n, const Real& tend) {
  Setup<Real, BurgersModel<Real>> s;
  s.grid = periodic_grid_1d(Real(0), Real(2), 2 * n, cfg.scheme.r);
  s.bc = BoundaryConditions<Real>::all(BcKind::Periodic);
  s.tend = tend;
  s.names = {"u"};
  const Grid<Real> g = s.grid;
  const double lambda = cfg.lambda;
  for (int i = 0; i < g.nx; ++i) {
    using std::sin;
    s.u0.push_back(Real(lambda) * (Real(1) + Real(0.5) * ipow(sin(pi<Real>() * g.x(i)), 3)));
  }
  if (cfg.problem == Problem::BurgersSmooth) {
    s.fixed_dt = burgers_dt(cfg.scheme, g.hx, lambda);
    s.exact = [=](const Real& t) {
      std::vector<Real> e;
      for (int i = 0; i < g.nx; ++i) e.push_back(burgers_exact(g.x(i), t, lambda));
      return e;
    };
  }
  return simulate(cfg, std::move(s));
}

template <class Real>
RunResult<Real> run_euler1d(const ExperimentConfig& cfg, int n, const Real& tend) {
  Setup<Real, Euler1DModel<Real>> s;
  s.tend = tend;
  s.names = {"rho", "mom", "energy"};
  s.bc = BoundaryConditions<Real>::all(BcKind::NonReflective);
  const Real gamma = s.model.gamma;
  auto push = [&](const Real& rho, const Real& u, const Real& p) {
    const auto st = euler1d_from_primitive(rho, u, p, gamma);
    s.u0.insert(s.u0.end(), {st.rho, st.mom, st.energy});
  };
  if (cfg.problem == Problem::LaxTube) {
    s.grid = node_grid_1d(Real(0), Real(2), 2 * n, cfg.scheme.r);
    for (int i = 0; i < s.grid.nx; ++i) {
      if (s.grid.x(i) < Real(1)) {
        push(Real(0.445), Real(0.698), Real(3.528));
      } else {
        push(Real(0.5), Real(0), Real(0.571));
      }
    }
  } else {
    s.grid = node_grid_1d(Real(-5), Real(5), 10 * n, cfg.scheme.r);
    for (int i = 0; i < s.grid.nx; ++i) {
      using std::sin;
      const Real x = s.grid.x(i);
      if (x < Real(-4.5)) {
        push(Real(1.515695), Real(0.523346), Real(1.805));
      } else {
        push(Real(1) + Real(0.1) * sin(Real(20) * pi<Real>() * x), Real(0), Real(1));
      }
    }
  }
  return simulate(cfg, std::move(s));
}

template <class Real>
RunResult<Real> run_euler2d(const ExperimentConfig& cfg, const Real& tend) {
  using State = std::array<Real, 4>;
  Setup<Real, Euler2DModel<Real>> s;
  s.tend = tend;
  s.names = {"rho", "mom_x", "mom_y", "energy"};
  const auto [nx, ny] = points_2d(cfg);
  const int gw = cfg.scheme.r;
  if (cfg.problem == Problem::RayleighTaylor) s.model.gamma = Real(5) / Real(3);
  const Real gamma = s.model.gamma;
  auto state = [gamma](double rho, double u, double v, double p) {
    const auto st = euler2d_from_primitive(Real(rho), Real(u), Real(v), Real(p), gamma);
    return State{st.rho, st.mom_x, st.mom_y, st.energy};
  };
  auto fill = [&](auto&& at) {
    for (int j = 0; j < s.grid.ny; ++j)
      for (int i = 0; i < s.grid.nx; ++i) {
        const State st = at(s.grid.x(i), s.grid.y(j));
        s.u0.insert(s.u0.end(), st.begin(), st.end());
      }
  };

  switch (cfg.problem) {
    case Problem::RiemannConfig1:
    case Problem::RiemannConfig2: {
      s.grid = node_grid_2d(Real(-1), Real(1), nx, Real(-1), Real(1), ny, gw);
      s.bc = BoundaryConditions<Real>::all(BcKind::NonReflective);
      const bool first = cfg.problem == Problem::RiemannConfig1;
      // quadrants: lower-left, upper-left, upper-right, lower-right
      const std::array<State, 4> q =
          first ? std::array<State, 4>{state(0.138, 1.206, 1.206, 0.029), state(0.5323, 1.206, 0, 0.3),
                                       state(1.5, 0, 0, 1.5), state(0.5323, 0, 1.206, 0.3)}
                : std::array<State, 4>{state(1, -0.75, 0.5, 1), state(2, 0.75, 0.5, 1), state(1, 0.75, -0.5, 1),
                                       state(3, -0.75, -0.5, 1)};
      fill([&](const Real& x, const Real& y) {
        const bool left = x < Real(0), low = y < Real(0);
        return left ? (low ? q[0] : q[1]) : (low ? q[3] : q[2]);
      });
      s.diagonal = first && nx == ny;
      break;
    }
    case Problem::DoubleMach: {
      s.grid = node_grid_2d(Real(0), Real(4), nx, Real(0), Real(1), ny, gw);
      using std::sin;
      using std::cos;
      using std::sqrt;
      const Real deg60 = pi<Real>() / Real(3);
      const auto post_st = euler2d_from_primitive(Real(8), Real(8.25) * sin(deg60), Real(-8.25) * cos(deg60),
                                                  Real(116.5), gamma);
      const State post{post_st.rho, post_st.mom_x, post_st.mom_y, post_st.energy};
      const State pre = state(1.4, 0, 0, 1);
      const Real sqrt3 = sqrt(Real(3));
      const Real x0 = Real(1) / Real(6);
      fill([&](const Real& x, const Real& y) { return x > x0 + y / sqrt3 ? pre : post; });
      s.bc = BoundaryConditions<Real>::all(BcKind::NonReflective);
      s.bc.sides[kLeft] = SideBc<Real>::of(BcKind::Dirichlet);
      s.bc.sides[kLeft].state.assign(post.begin(), post.end());
      s.bc.sides[kBottom].switch_at = x0;
      s.bc.sides[kBottom].beyond = BcKind::Reflective;
      s.bc.sides[kTop] = SideBc<Real>::of(BcKind::TimeDependent);
      s.bc.sides[kTop].profile = [=](const Real& t, const Real& x, const Real& y, Real* out) {
        const State& st = x < x0 + (y + Real(20) * t) / sqrt3 ? post : pre;
        std::copy(st.begin(), st.end(), out);
      };
      break;
    }
    case Problem::RayleighTaylor: {
      s.grid = node_grid_2d(Real(0), Real(0.25), nx, Real(0), Real(1), ny, gw);
      s.model.source_kind = SourceKind::RayleighTaylor;
      fill([&](const Real& x, const Real& y) {
        using std::cos;
        using std::sqrt;
        const bool lower = y < Real(0.5);
        const Real rho = lower ? Real(2) : Real(1);
        const Real p = lower ? Real(2) * y + Real(1) : y + Real(1.5);
        const Real v = Real(-0.025) * sqrt(gamma * p / rho) * cos(Real(8) * pi<Real>() * x);
        const auto st = euler2d_from_primitive(rho, Real(0), v, p, gamma);
        return State{st.rho, st.mom_x, st.mom_y, st.energy};
      });
      s.bc = BoundaryConditions<Real>::all(BcKind::Reflective);
      const State top = state(1, 0, 0, 2.5), bottom = state(2, 0, 0, 1);
      s.bc.sides[kTop] = SideBc<Real>::of(BcKind::Dirichlet);
      s.bc.sides[kTop].state.assign(top.begin(), top.end());
      s.bc.sides[kBottom] = SideBc<Real>::of(BcKind::Dirichlet);
      s.bc.sides[kBottom].state.assign(bottom.begin(), bottom.end());
      s.symmetry_plane = Real(0.125);
      break;
    }
    default:
      throw std::invalid_argument("not a 2D problem");
  }
  return simulate(cfg, std::move(s));
}

}  // namespace

std::string_view to_string(Problem p) {
  for (const auto& e : kProblemNames)
    if (e.problem == p) return e.name;
  return "unknown";
}

Problem parse_problem(std::string_view name) {
  for (const auto& e : kProblemNames)
    if (e.name == name) return e.problem;
  std::string all;
  for (const auto& e : kProblemNames) all += (all.empty() ? "" : "|") + std::string(e.name);
  throw std::invalid_argument("unknown problem '" + std::string(name) + "' (expected " + all + ")");
}

bool is_2d(Problem p) {
  return p == Problem::RiemannConfig1 || p == Problem::RiemannConfig2 || p == Problem::DoubleMach ||
         p == Problem::RayleighTaylor;
}

bool has_exact_solution(Problem p) {
  return p == Problem::AdvectSinAlpha || p == Problem::AdvectJiangShu || p == Problem::BurgersSmooth;
}

PresetInfo describe(const ExperimentConfig& cfg) {
  PresetInfo info;
  info.tend = cfg.tend.value_or(default_tend(cfg.problem, cfg.lambda));
  if (is_2d(cfg.problem)) {
    std::tie(info.nx, info.ny) = points_2d(cfg);
  } else {
    info.n = cfg.n > 0 ? cfg.n : default_n(cfg.problem);
  }
  const std::string cfl = "SSP-RK3, dt = cfl h / max wave speed";
  switch (cfg.problem) {
    case Problem::AdvectSinAlpha:
    case Problem::AdvectJiangShu:
      info.domain = "[-1,1]";
      info.boundary = "periodic";
      info.time_rule = "linear SSP-RK(m,m-1) with m-1 = scheme order, dt = h";
      break;
    case Problem::BurgersSmooth:
      info.domain = "[0,2]";
      info.boundary = "periodic";
      info.time_rule = "SSP-RK3, dt = c h^(order/3) / lambda";
      break;
    case Problem::BurgersShock:
      info.domain = "[0,2]";
      info.boundary = "periodic";
      info.time_rule = cfl;
      break;
    case Problem::LaxTube:
      info.domain = "[0,2]";
      info.boundary = "non-reflective";
      info.time_rule = cfl;
      break;
    case Problem::TitarevToro:
      info.domain = "[-5,5]";
      info.boundary = "non-reflective";
      info.time_rule = cfl;
      break;
    case Problem::RiemannConfig1:
    case Problem::RiemannConfig2:
      info.domain = "[-1,1]x[-1,1]";
      info.boundary = "non-reflective";
      info.time_rule = cfl;
      break;
    case Problem::DoubleMach:
      info.domain = "[0,4]x[0,1]";
      info.boundary = "left post-shock, right non-reflective, bottom non-reflective/reflective at x=1/6, top moving shock";
      info.time_rule = cfl;
      break;
    case Problem::RayleighTaylor:
      info.domain = "[0,0.25]x[0,1]";
      info.boundary = "left/right reflective, top (1,0,0,2.5), bottom (2,0,0,1), mirror-averaged about x=0.125";
      info.time_rule = cfl;
      break;
  }
  return info;
}

template <class Real>
RunResult<Real> run_experiment(const ExperimentConfig& cfg) {
  if (!(cfg.lambda != 0.0) || !std::isfinite(cfg.lambda)) throw std::invalid_argument("lambda must be finite and non-zero");
  if (!(cfg.cfl > 0.0)) throw std::invalid_argument("cfl must be positive");
  if (cfg.threads < 1) throw std::invalid_argument("threads must be at least 1");
  const PresetInfo info = describe(cfg);
  if (!(info.tend >= 0.0)) throw std::invalid_argument("end time must be non-negative");
  const Real tend(info.tend);
  switch (cfg.problem) {
    case Problem::AdvectSinAlpha:
    case Problem::AdvectJiangShu:
      if (info.n < 1) throw std::invalid_argument("mesh parameter n must be positive");
      return run_advection<Real>(cfg, info.n, tend);
    case Problem::BurgersSmooth:
    case Problem::BurgersShock:
      if (info.n < 1) throw std::invalid_argument("mesh parameter n must be positive");
      if (cfg.lambda < 0) throw std::invalid_argument("Burgers presets need lambda > 0 (upwind flux)");
      return run_burgers<Real>(cfg, info.n, tend);
    case Problem::LaxTube:
    case Problem::TitarevToro:
      if (info.n < 1) throw std::invalid_argument("mesh parameter n must be positive");
      return run_euler1d<Real>(cfg, info.n, tend);
    default:
      if (info.nx < 2 || info.ny < 2) throw std::invalid_argument("2D grids need at least 2 points per axis");
      return run_euler2d<Real>(cfg, tend);
  }
}

template RunResult<double> run_experiment<double>(const ExperimentConfig&);
template RunResult<DoubleDouble> run_experiment<DoubleDouble>(const ExperimentConfig&);

template <class Real>
Real burgers_exact(const Real& x, const Real& t, double lambda) {
  using std::abs;
  using std::cos;
  using std::sin;
  const Real lam(lambda);
  const Real p = pi<Real>();
  auto u0 = [&](const Real& xi) { return lam * (Real(1) + Real(0.5) * ipow(sin(p * xi), 3)); };
  auto du0 = [&](const Real& xi) {
    const Real s = sin(p * xi);
    return lam * Real(1.5) * p * s * s * cos(p * xi);
  };
  Real u = u0(x);
  const Real tol = Real(4) * ScalarTraits<Real>::epsilon() * abs(lam);
  for (int it = 0; it < 200; ++it) {
    const Real xi = x - u * t;
    const Real g = u - u0(xi);
    const Real dg = Real(1) + t * du0(xi);
    const Real step = g / dg;
    u -= step;
    if (abs(step) <= tol) break;
  }
  return u;
}

template double burgers_exact<double>(const double&, const double&, double);
template DoubleDouble burgers_exact<DoubleDouble>(const DoubleDouble&, const DoubleDouble&, double);

double jiang_shu_profile(double x) {
  const double a = 0.5, z = -0.7, delta = 0.005, alpha = 10.0;
  const double beta = std::log(2.0) / (36.0 * delta * delta);
  auto G = [&](double c) { return std::exp(-beta * (x - c) * (x - c)); };
  auto F = [&](double c) { return std::sqrt(std::max(1.0 - alpha * alpha * (x - c) * (x - c), 0.0)); };
  if (x >= -0.8 && x <= -0.6) return (G(z - delta) + G(z + delta) + 4.0 * G(z)) / 6.0;
  if (x >= -0.4 && x <= -0.2) return 1.0;
  if (x >= 0.0 && x <= 0.2) return 1.0 - std::abs(10.0 * (x - 0.1));
  if (x >= 0.4 && x <= 0.6) return (F(a - delta) + F(a + delta) + 4.0 * F(a)) / 6.0;
  return 0.0;
}

double precision_floor(Precision p, double scale) {
  const double eps = p == Precision::Double ? ScalarTraits<double>::epsilon()
                                            : to_double(ScalarTraits<DoubleDouble>::epsilon());
  return 100.0 * eps * std::abs(scale);
}

namespace {

template <class Real>
ConvergenceRow ladder_row(const ExperimentConfig& cfg, double& scale) {
  const RunResult<Real> r = run_experiment<Real>(cfg);
  if (r.exact.empty()) throw std::invalid_argument("convergence ladders need a problem with an exact solution");
  double mx = 0;
  for (const auto& v : r.initial) mx = std::max(mx, std::abs(to_double(v)));
  scale = std::max(scale, mx);
  const ErrorNorms e = error_norms<Real>(r.u, r.exact);
  ConvergenceRow row;
  row.n = cfg.n;
  row.l1 = e.l1;
  row.linf = e.linf;
  return row;
}

}  // namespace

ConvergenceTable run_convergence_ladder(const ExperimentConfig& base, std::span<const int> meshes) {
  if (!has_exact_solution(base.problem)) {
    throw std::invalid_argument("convergence ladders need sin-alpha, jiang-shu or burgers-smooth");
  }
  ConvergenceTable table;
  table.config = base;
  const auto start = std::chrono::steady_clock::now();
  double scale = 0;
  for (int n : meshes) {
    if (n < 1) throw std::invalid_argument("mesh parameters must be positive");
    ExperimentConfig cfg = base;
    cfg.n = n;
    table.rows.push_back(cfg.precision == Precision::Double ? ladder_row<double>(cfg, scale)
                                                            : ladder_row<DoubleDouble>(cfg, scale));
  }
  table.floor = precision_floor(base.precision, scale);
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    auto& row = table.rows[i];
    row.below_floor = row.l1 < table.floor;
    if (i == 0) continue;
    const auto& prev = table.rows[i - 1];
    if (row.below_floor || prev.below_floor) continue;
    const double ratio = std::log(static_cast<double>(row.n) / prev.n);
    row.order_l1 = std::log(prev.l1 / row.l1) / ratio;
    row.order_linf = std::log(prev.linf / row.linf) / ratio;
  }
  table.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return table;
}

std::optional<double> fitted_order(const ConvergenceTable& t) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int k = 0;
  for (const auto& r : t.rows) {
    if (r.below_floor || !(r.l1 > 0)) continue;
    const double x = std::log(1.0 / r.n), y = std::log(r.l1);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++k;
  }
  if (k < 2) return std::nullopt;
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

void write_convergence_csv(std::ostream& os, const ConvergenceTable& t) {
  auto num = [](double v) { return format_number(v); };
  auto opt = [&](const std::optional<double>& v) { return v ? num(*v) : std::string(); };
  os << "h,L1,order,Linf,order,floor\n";
  for (const auto& r : t.rows) {
    os << "1/" << r.n << ',' << num(r.l1) << ',' << opt(r.order_l1) << ',' << num(r.linf) << ','
       << opt(r.order_linf) << ',' << (r.below_floor ? "below" : "") << '\n';
  }
}

std::vector<TimingRow> timing_comparison(const ExperimentConfig& base, std::span<const Scheme> schemes,
                                         int repetitions, long steps) {
  if (schemes.empty()) throw std::invalid_argument("timing needs at least one scheme");
  if (repetitions < 1 || steps < 1) throw std::invalid_argument("timing needs positive repetitions and steps");
  std::vector<TimingRow> rows;
  for (const Scheme& sc : schemes) {
    ExperimentConfig cfg = base;
    cfg.scheme = sc;
    cfg.max_steps = steps;
    std::vector<double> samples;
    for (int k = 0; k < repetitions; ++k) {
      double per_step;
      if (cfg.precision == Precision::Double) {
        const auto r = run_experiment<double>(cfg);
        per_step = r.wall_seconds / std::max<long>(1, r.steps);
      } else {
        const auto r = run_experiment<DoubleDouble>(cfg);
        per_step = r.wall_seconds / std::max<long>(1, r.steps);
      }
      samples.push_back(per_step);
    }
    std::nth_element(samples.begin(), samples.begin() + samples.size() / 2, samples.end());
    rows.push_back({sc.name(), samples[samples.size() / 2], 0.0});
  }
  double ref = rows.front().seconds_per_step;
  for (const auto& r : rows)
    if (r.scheme == "weno-ao53") ref = r.seconds_per_step;
  for (auto& r : rows) r.normalized = r.seconds_per_step / ref;
  return rows;
}

void write_timing_csv(std::ostream& os, std::span<const TimingRow> rows) {
  os << "scheme,seconds_per_step,normalized\n";
  for (const auto& r : rows) os << r.scheme << ',' << format_number(r.seconds_per_step) << ',' << format_number(r.normalized) << '\n';
}

}  // namespace enomr
