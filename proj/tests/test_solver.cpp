#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "enomr/solver.hpp"
#include "enomr/timeint.hpp"

using namespace enomr;

namespace {

std::vector<double> euler1d_field(const Grid<double>& g, double gamma) {
  std::vector<double> u;
  for (int i = 0; i < g.nx; ++i) {
    const double x = g.x(i);
    const auto s = euler1d_from_primitive(1.0 + 0.2 * std::sin(M_PI * x), 0.3 + 0.1 * std::cos(M_PI * x),
                                          1.0 + 0.1 * std::sin(2 * M_PI * x), gamma);
    u.insert(u.end(), {s.rho, s.mom, s.energy});
  }
  return u;
}

}  // namespace

TEST_CASE("periodic ghosts copy the opposite interior") {
  auto g = periodic_grid_1d(0.0, 1.0, 8, 3);
  Solver<double, AdvectionModel<double>> s({}, Scheme::eno_mr(5), g, BoundaryConditions<double>::all(BcKind::Periodic));
  std::vector<double> u{0, 1, 2, 3, 4, 5, 6, 7};
  s.fill_ghosts(u, 0.0);
  CHECK(*s.padded_cell(-1) == 7);
  CHECK(*s.padded_cell(-3) == 5);
  CHECK(*s.padded_cell(8) == 0);
  CHECK(*s.padded_cell(10) == 2);
}

TEST_CASE("reflective, non-reflective and Dirichlet ghosts") {
  auto g = node_grid_2d(0.0, 1.0, 6, 0.0, 1.0, 6, 3);
  auto bc = BoundaryConditions<double>::all(BcKind::NonReflective);
  bc.sides[kBottom].kind = BcKind::Reflective;
  bc.sides[kTop] = SideBc<double>::of(BcKind::Dirichlet);
  bc.sides[kTop].state = {1, 2, 3, 10};
  Euler2DModel<double> model;
  Solver<double, Euler2DModel<double>> s(model, Scheme::eno_mr(5), g, bc);
  std::vector<double> u;
  for (int j = 0; j < 6; ++j)
    for (int i = 0; i < 6; ++i) u.insert(u.end(), {1.0 + j, 0.1 * i, 0.2 + j, 5.0});
  s.fill_ghosts(u, 0.0);
  for (int i = 0; i < 6; ++i) {
    // ghost j = -k mirrors node k with the normal momentum negated
    const double* gh = s.padded_cell(i, -2);
    const double* src = s.padded_cell(i, 2);
    CHECK(gh[0] == src[0]);
    CHECK(gh[1] == src[1]);
    CHECK(gh[2] == -src[2]);
    CHECK(gh[3] == src[3]);
    CHECK(s.padded_cell(i, 7)[3] == 10.0);
  }
  CHECK(s.padded_cell(-3, 4)[1] == s.padded_cell(0, 4)[1]);
  CHECK(s.padded_cell(8, 4)[1] == s.padded_cell(5, 4)[1]);
}

TEST_CASE("piecewise side switches kind along the boundary") {
  auto g = node_grid_2d(0.0, 1.0, 7, 0.0, 1.0, 7, 3);
  auto bc = BoundaryConditions<double>::all(BcKind::NonReflective);
  bc.sides[kBottom].switch_at = 0.5;
  bc.sides[kBottom].beyond = BcKind::Reflective;
  Solver<double, Euler2DModel<double>> s({}, Scheme::eno_mr(5), g, bc);
  std::vector<double> u;
  for (int j = 0; j < 7; ++j)
    for (int i = 0; i < 7; ++i) u.insert(u.end(), {1.0, 0.0, 0.5 + j, 5.0});
  s.fill_ghosts(u, 0.0);
  CHECK(s.padded_cell(1, -1)[2] == 0.5);   // x <= 0.5: copy of the edge node
  CHECK(s.padded_cell(5, -1)[2] == -1.5);  // x > 0.5: mirror of node 1
}

TEST_CASE("configuration errors are rejected") {
  auto g = periodic_grid_1d(0.0, 1.0, 16, 3);
  auto bad = BoundaryConditions<double>::all(BcKind::Periodic);
  bad.sides[kRight].kind = BcKind::NonReflective;
  CHECK_THROWS_AS((Solver<double, AdvectionModel<double>>({}, Scheme::eno_mr(5), g, bad)), std::invalid_argument);
  CHECK_THROWS_AS((Solver<double, AdvectionModel<double>>({}, Scheme::eno_mr(9), g,
                                                          BoundaryConditions<double>::all(BcKind::Periodic))),
                  std::invalid_argument);
}

TEST_CASE("constant fields have zero rhs") {
  for (const char* name : {"eno-mr5", "eno-mr17", "weno-ao953"}) {
    const Scheme sc = Scheme::parse(name);
    auto g = node_grid_2d(0.0, 1.0, 21, 0.0, 1.0, 21, sc.r);
    Solver<double, Euler2DModel<double>> s({}, sc, g, BoundaryConditions<double>::all(BcKind::NonReflective));
    const auto st = euler2d_from_primitive(1.2, 0.4, -0.3, 2.0, 1.4);
    std::vector<double> u;
    for (std::size_t c = 0; c < g.cells(); ++c) u.insert(u.end(), {st.rho, st.mom_x, st.mom_y, st.energy});
    std::vector<double> d;
    s.rhs(u, 0.0, d);
    double worst = 0;
    for (double v : d) worst = std::max(worst, std::abs(v));
    CHECK_MESSAGE(worst < 1e-12, name);
  }
}

TEST_CASE("advection rhs approximates -u_x at design order and telescopes") {
  auto err = [](int n) {
    auto g = periodic_grid_1d(-1.0, 1.0, n, 3);
    Solver<double, AdvectionModel<double>> s({}, Scheme::eno_mr(5), g,
                                             BoundaryConditions<double>::all(BcKind::Periodic));
    std::vector<double> u(g.cells()), d;
    for (int i = 0; i < n; ++i) u[i] = std::sin(M_PI * g.x(i));
    s.rhs(u, 0.0, d);
    double e = 0, sum = 0, scale = 0;
    for (int i = 0; i < n; ++i) {
      e = std::max(e, std::abs(d[i] + M_PI * std::cos(M_PI * g.x(i))));
      sum += d[i];
      scale += std::abs(d[i]);
    }
    CHECK(std::abs(sum) <= 1e-13 * scale);
    return e;
  };
  const double e1 = err(100), e2 = err(200);
  CHECK(std::log2(e1 / e2) > 4.7);
}

TEST_CASE("a periodic SSP-RK3 step conserves every component") {
  auto g = periodic_grid_1d(0.0, 2.0, 64, 5);
  Euler1DModel<double> model;
  Solver<double, Euler1DModel<double>> s(model, Scheme::eno_mr(9), g, BoundaryConditions<double>::all(BcKind::Periodic));
  auto u = euler1d_field(g, 1.4);
  std::array<double, 3> before{}, after{};
  for (std::size_t c = 0; c < g.cells(); ++c)
    for (int k = 0; k < 3; ++k) before[k] += u[c * 3 + k];
  auto rhs = [&](const std::vector<double>& x, double t, std::vector<double>& d) { s.rhs(x, t, d); };
  for (int step = 0; step < 5; ++step) ssp_rk3_step(u, step * 0.005, 0.005, rhs);
  for (std::size_t c = 0; c < g.cells(); ++c)
    for (int k = 0; k < 3; ++k) after[k] += u[c * 3 + k];
  for (int k = 0; k < 3; ++k) CHECK(std::abs(after[k] - before[k]) <= 1e-12 * std::abs(before[k]));
}

TEST_CASE("2D driver on y-independent data matches the 1D driver") {
  const double gamma = 1.4;
  auto g1 = periodic_grid_1d(0.0, 2.0, 40, 5);
  Solver<double, Euler1DModel<double>> s1({}, Scheme::eno_mr(9), g1, BoundaryConditions<double>::all(BcKind::Periodic));
  const auto u1 = euler1d_field(g1, gamma);

  Grid<double> g2 = g1;
  g2.dims = 2;
  g2.ny = 12;
  g2.hy = 0.05;
  Solver<double, Euler2DModel<double>> s2({}, Scheme::eno_mr(9), g2, BoundaryConditions<double>::all(BcKind::Periodic));
  std::vector<double> u2;
  for (int j = 0; j < g2.ny; ++j)
    for (int i = 0; i < g2.nx; ++i) u2.insert(u2.end(), {u1[3 * i], u1[3 * i + 1], 0.0, u1[3 * i + 2]});
  std::vector<double> d1, d2;
  s1.rhs(u1, 0.0, d1);
  s2.rhs(u2, 0.0, d2);
  double worst = 0;
  for (int j = 0; j < g2.ny; ++j)
    for (int i = 0; i < g2.nx; ++i) {
      const double* a = d2.data() + g2.interior(i, j) * 4;
      worst = std::max({worst, std::abs(a[0] - d1[3 * i]), std::abs(a[1] - d1[3 * i + 1]), std::abs(a[2]),
                        std::abs(a[3] - d1[3 * i + 2])});
    }
  CHECK(worst < 1e-13);
}

TEST_CASE("wider ghosts and more threads do not change the result") {
  const auto sc = Scheme::eno_mr(5);
  auto make_grid = [](int ghost) { return node_grid_2d(-1.0, 1.0, 33, -1.0, 1.0, 29, ghost); };
  auto field = [](const Grid<double>& g) {
    std::vector<double> u;
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        const bool a = g.x(i) < 0, b = g.y(j) < 0;
        const auto s = euler2d_from_primitive(a ? (b ? 0.138 : 0.5323) : (b ? 0.5323 : 1.5), a ? 1.206 : 0.0,
                                              b ? 1.206 : 0.0, a ? (b ? 0.029 : 0.3) : (b ? 0.3 : 1.5), 1.4);
        u.insert(u.end(), {s.rho, s.mom_x, s.mom_y, s.energy});
      }
    return u;
  };
  auto bc = BoundaryConditions<double>::all(BcKind::NonReflective);
  Solver<double, Euler2DModel<double>> a({}, sc, make_grid(3), bc, 1);
  Solver<double, Euler2DModel<double>> b({}, sc, make_grid(6), bc, 1);
  Solver<double, Euler2DModel<double>> c({}, sc, make_grid(3), bc, 3);
  const auto u = field(a.grid());
  std::vector<double> da, db, dc;
  a.rhs(u, 0.0, da);
  b.rhs(u, 0.0, db);
  c.rhs(u, 0.0, dc);
  CHECK(da == db);
  CHECK(da == dc);
}

TEST_CASE("non-physical states are located") {
  auto g = node_grid_1d(0.0, 1.0, 20, 3);
  Solver<double, Euler1DModel<double>> s({}, Scheme::eno_mr(5), g, BoundaryConditions<double>::all(BcKind::NonReflective));
  auto u = euler1d_field(g, 1.4);
  u[7 * 3] = -1.0;
  std::vector<double> d;
  try {
    s.rhs(u, 0.0, d);
    FAIL("expected NonPhysicalState");
  } catch (const NonPhysicalState& e) {
    CHECK(e.index() == 7);
    CHECK(std::string(e.what()).find("i=7") != std::string::npos);
  }
}

TEST_CASE("symmetry enforcement") {
  auto g = node_grid_2d(0.0, 0.25, 9, 0.0, 1.0, 5, 3);
  std::vector<double> u;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double x = g.x(i) - 0.125;
      u.insert(u.end(), {1.0 + x * x + j, x, 0.1 * j, 3.0});
    }
  const auto sym = u;
  enforce_symmetry(g, 4, u, 0.125, 1);
  for (std::size_t k = 0; k < u.size(); ++k) CHECK(u[k] == doctest::Approx(sym[k]).epsilon(1e-15));

  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) u[g.interior(i, j) * 4] += 0.01 * (g.x(i) - 0.125);
  CHECK(asymmetry(g, 4, u, 1) > 0);
  enforce_symmetry(g, 4, u, 0.125, 1);
  CHECK(asymmetry(g, 4, u, 1) == 0.0);
  for (std::size_t k = 0; k < u.size(); k += 4) CHECK(u[k] == doctest::Approx(sym[k]).epsilon(1e-15));

  CHECK_THROWS_AS(enforce_symmetry(g, 4, u, 0.1, 1), std::invalid_argument);
}

TEST_CASE("CSV snapshot layout") {
  auto g = node_grid_1d(0.0, 1.0, 2, 3);
  std::ostringstream os;
  write_field_csv(os, g, 1, std::vector<double>{1.0, 2.0, 3.0}, {"u"});
  CHECK(os.str() == "x,u\n0,1\n0.5,2\n1,3\n");
}
