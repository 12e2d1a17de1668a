#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "enomr/flux.hpp"
#include "enomr/physics.hpp"

using namespace enomr;

namespace {

template <int N>
double rel_diff(const std::array<std::array<double, N>, N>& a, const std::array<std::array<double, N>, N>& b) {
  double num = 0, den = 0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      num = std::max(num, std::abs(a[i][j] - b[i][j]));
      den = std::max(den, std::abs(b[i][j]));
    }
  return num / std::max(den, 1e-300);
}

// Analytic Jacobian of the 2D x-flux in conserved variables.
std::array<std::array<double, 4>, 4> euler2d_jacobian(double u, double v, double H, double gamma) {
  const double g1 = gamma - 1, q2 = u * u + v * v;
  return {{{0, 1, 0, 0},
           {0.5 * g1 * q2 - u * u, (3 - gamma) * u, -g1 * v, g1},
           {-u * v, v, u, 0},
           {u * (0.5 * g1 * q2 - H), H - g1 * u * u, -g1 * u * v, gamma * u}}};
}

}  // namespace

TEST_CASE("pointwise fluxes") {
  CHECK(advection_flux(3.0) == 3.0);
  CHECK(burgers_flux(3.0) == 4.5);

  const auto s = euler1d_from_primitive(1.0, 0.0, 1.0, 1.4);
  CHECK(s.energy == doctest::Approx(2.5));
  const auto f = euler_flux_1d(s, 1.4);
  CHECK(f[0] == 0.0);
  CHECK(f[1] == doctest::Approx(1.0));
  CHECK(f[2] == 0.0);

  const auto lax = euler1d_from_primitive(0.445, 0.698, 3.528, 1.4);
  CHECK(euler_flux_1d(lax, 1.4)[0] == doctest::Approx(0.31061));

  // mirrored velocity flips the parity of the momentum-odd components
  const auto a = euler2d_from_primitive(1.3, 0.4, -0.2, 0.9, 1.4);
  const auto b = euler2d_from_primitive(1.3, -0.4, -0.2, 0.9, 1.4);
  const auto fa = euler_flux_2d_x(a, 1.4), fb = euler_flux_2d_x(b, 1.4);
  CHECK(fa[0] == doctest::Approx(-fb[0]));
  CHECK(fa[1] == doctest::Approx(fb[1]));
  CHECK(fa[2] == doctest::Approx(-fb[2]));
  CHECK(fa[3] == doctest::Approx(-fb[3]));

  // y flux equals the x flux of the swapped state
  const auto gy = euler_flux_2d_y(a, 1.4);
  CHECK(gy[0] == doctest::Approx(a.mom_y));
  CHECK(gy[1] == doctest::Approx(a.mom_x * a.mom_y / a.rho));

  CHECK_THROWS_AS(euler_flux_1d(EulerState1D<double>{-1.0, 0.0, 1.0}, 1.4), NonPhysicalState);
  CHECK_THROWS_AS(euler_flux_1d(EulerState1D<double>{1.0, 3.0, 1.0}, 1.4), NonPhysicalState);
}

TEST_CASE("source terms") {
  const auto none = apply_source(EulerState2D<double>{2, 0, 0, 1}, SourceKind::None);
  for (double v : none) CHECK(v == 0.0);
  const auto rt = apply_source(EulerState2D<double>{2, 0, 0, 1}, SourceKind::RayleighTaylor);
  CHECK(rt == std::array<double, 4>{0, 0, 2, 0});
  const auto rt2 = apply_source(EulerState2D<double>{1, 0, -0.025, 1}, SourceKind::RayleighTaylor);
  CHECK(rt2 == std::array<double, 4>{0, 0, 1, -0.025});
}

TEST_CASE("Lax-Friedrichs splitting") {
  auto p = lax_friedrichs_split<double>(std::vector<double>{2}, std::vector<double>{2}, 1.0);
  CHECK(p.plus[0] == 2.0);
  CHECK(p.minus[0] == 0.0);
  auto q = lax_friedrichs_split<double>(std::vector<double>{2}, std::vector<double>{2}, 3.0);
  CHECK(q.plus[0] == 4.0);
  CHECK(q.minus[0] == -2.0);
  CHECK_THROWS_AS(lax_friedrichs_split<double>(std::vector<double>{1}, std::vector<double>{1}, -1.0),
                  std::invalid_argument);

  // monotone parts for Burgers with alpha = max|u|
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(-2, 2);
  std::vector<double> u(200), f(200);
  for (auto& v : u) v = d(rng);
  std::sort(u.begin(), u.end());
  double alpha = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    f[i] = burgers_flux(u[i]);
    alpha = std::max(alpha, std::abs(u[i]));
  }
  auto s = lax_friedrichs_split<double>(f, u, alpha);
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    CHECK(s.plus[i + 1] - s.plus[i] >= -1e-15);
    CHECK(s.minus[i + 1] - s.minus[i] <= 1e-15);
    CHECK(s.plus[i] + s.minus[i] == doctest::Approx(f[i]));
  }
}

TEST_CASE("wave speed bounds") {
  AdvectionModel<double> adv;
  CHECK(wave_speed_bound<double>(adv, std::vector<double>{0.3, -5}) == 1.0);
  BurgersModel<double> burgers;
  CHECK(wave_speed_bound<double>(burgers, std::vector<double>{-2, 1, 3}) == 3.0);
  Euler1DModel<double> euler;
  const auto s = euler1d_from_primitive(1.0, 0.0, 1.0, 1.4);
  CHECK(wave_speed_bound<double>(euler, std::vector<double>{s.rho, s.mom, s.energy}) ==
        doctest::Approx(std::sqrt(1.4)));
  try {
    (void)wave_speed_bound<double>(euler, std::vector<double>{s.rho, s.mom, s.energy, -1, 0, 1});
    FAIL("expected NonPhysicalState");
  } catch (const NonPhysicalState& e) {
    CHECK(e.index() == 1);
  }
}

TEST_CASE("Roe average") {
  auto same = roe_average(1.2, 0.3, -0.1, 4.0, 1.2, 0.3, -0.1, 4.0, 1.4);
  CHECK(same.rho == doctest::Approx(1.2));
  CHECK(same.u == doctest::Approx(0.3));
  CHECK(same.H == doctest::Approx(4.0));
  auto mixed = roe_average(1.0, 0.0, 0.0, 5.0, 4.0, 3.0, 0.0, 5.0, 1.4);
  CHECK(mixed.u == doctest::Approx(2.0));
  CHECK(mixed.rho == doctest::Approx(2.0));
  CHECK(mixed.c > 0.0);
  CHECK_THROWS_AS(roe_average(-1.0, 0.0, 0.0, 5.0, 4.0, 3.0, 0.0, 5.0, 1.4), NonPhysicalState);
}

TEST_CASE("eigensystem round trip on random Roe states") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> rho(0.05, 10), vel(-5, 5), pre(0.01, 100);
  const double gamma = 1.4;
  double worst_id = 0, worst_jac = 0;
  for (int t = 0; t < 10000; ++t) {
    const auto a = euler2d_from_primitive(rho(rng), vel(rng), vel(rng), pre(rng), gamma);
    const auto b = euler2d_from_primitive(rho(rng), vel(rng), vel(rng), pre(rng), gamma);
    const std::array<double, 4> ua{a.rho, a.mom_x, a.mom_y, a.energy}, ub{b.rho, b.mom_x, b.mom_y, b.energy};
    const auto roe = roe_average(ua.data(), ub.data(), 4, gamma);
    const auto fr = euler_frame<double, 4>(roe, gamma);
    std::array<std::array<double, 4>, 4> prod{}, eye{};
    for (int i = 0; i < 4; ++i) {
      eye[i][i] = 1;
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) prod[i][j] += fr.left[i][k] * fr.right[k][j];
    }
    worst_id = std::max(worst_id, rel_diff<4>(prod, eye));
    worst_jac = std::max(worst_jac, rel_diff<4>(frame_jacobian(fr), euler2d_jacobian(roe.u, roe.v, roe.H, gamma)));
  }
  CHECK(worst_id < 1e-12);
  CHECK(worst_jac < 1e-10);

  // 1D frame
  const auto roe1 = roe_average(1.0, 0.5, 0.0, 3.0, 0.5, -0.2, 0.0, 2.5, gamma);
  const auto f1 = euler_frame<double, 3>(roe1, gamma);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0;
      for (int k = 0; k < 3; ++k) s += f1.left[i][k] * f1.right[k][j];
      CHECK(s == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-13));
    }
}

TEST_CASE("characteristic reconstruction is consistent on uniform data") {
  const double gamma = 1.4;
  const auto s = euler2d_from_primitive(0.8, 0.3, -0.7, 1.1, gamma);
  const std::array<double, 4> u{s.rho, s.mom_x, s.mom_y, s.energy};
  std::array<double, 4> f;
  euler_flux_x(u.data(), 4, gamma, f.data());
  for (const char* name : {"eno-mr5", "eno-mr9", "eno-mr13", "eno-mr17", "weno-ao53", "weno-ao953"}) {
    Reconstructor<double> rec(Scheme::parse(name));
    const int w = 2 * rec.radius();
    std::vector<double> us, fs;
    for (int k = 0; k < w; ++k) {
      us.insert(us.end(), u.begin(), u.end());
      fs.insert(fs.end(), f.begin(), f.end());
    }
    const auto roe = roe_average(u.data(), u.data(), 4, gamma);
    const auto fr = euler_frame<double, 4>(roe, gamma);
    std::array<double, 4> out;
    characteristic_reconstruct<double, 4>(rec, fr, us.data(), fs.data(), 2.5, out.data());
    for (int c = 0; c < 4; ++c) CHECK_MESSAGE(std::abs(out[c] - f[c]) <= 1e-14 * (1 + std::abs(f[c])), name);
  }
}

TEST_CASE("identity eigensystem reduces to the scalar path") {
  Reconstructor<double> rec(Scheme::eno_mr(9));
  CharacteristicFrame<double, 1> fr{};
  fr.left[0][0] = 1;
  fr.right[0][0] = 1;
  fr.eigenvalues[0] = 1;
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> d(-1, 1);
  std::vector<double> u(10), f(10), fp(10), fm(10);
  for (int k = 0; k < 10; ++k) {
    u[k] = d(rng);
    f[k] = 0.5 * u[k] * u[k];
    fp[k] = 0.5 * (f[k] + 1.5 * u[k]);
    fm[k] = 0.5 * (f[k] - 1.5 * u[k]);
  }
  double out;
  characteristic_reconstruct<double, 1>(rec, fr, u.data(), f.data(), 1.5, &out);
  CHECK(out == rec.split_interface(fp.data(), fm.data()));
}

TEST_CASE("Sod-like interface flux stays inside the LF envelope") {
  const double gamma = 1.4;
  const auto l = euler1d_from_primitive(1.0, 0.0, 1.0, gamma);
  const auto r = euler1d_from_primitive(0.125, 0.0, 0.1, gamma);
  Reconstructor<double> rec(Scheme::eno_mr(5));
  const int w = 2 * rec.radius();
  std::vector<double> us, fs;
  std::array<double, 3> fl, fr_;
  const std::array<double, 3> ul{l.rho, l.mom, l.energy}, ur{r.rho, r.mom, r.energy};
  euler_flux_x(ul.data(), 3, gamma, fl.data());
  euler_flux_x(ur.data(), 3, gamma, fr_.data());
  for (int k = 0; k < w; ++k) {
    const auto& uu = k < w / 2 ? ul : ur;
    const auto& ff = k < w / 2 ? fl : fr_;
    us.insert(us.end(), uu.begin(), uu.end());
    fs.insert(fs.end(), ff.begin(), ff.end());
  }
  Euler1DModel<double> model;
  const double alpha = std::max(model.max_speed(ul.data()), model.max_speed(ur.data()));
  const auto frame = euler_frame<double, 3>(roe_average(ul.data(), ur.data(), 3, gamma), gamma);
  std::array<double, 3> out;
  characteristic_reconstruct<double, 3>(rec, frame, us.data(), fs.data(), alpha, out.data());
  for (int c = 0; c < 3; ++c) {
    const double lo = std::min(fl[c], fr_[c]) - alpha * std::abs(ul[c] - ur[c]);
    const double hi = std::max(fl[c], fr_[c]) + alpha * std::abs(ul[c] - ur[c]);
    CHECK(out[c] >= lo);
    CHECK(out[c] <= hi);
  }
}
