#pragma once

// Explicit SSP Runge-Kutta integrators.
//
// The right-hand side is any callable rhs(u, t, dudt) writing L(u) at time t
// into dudt (same size as u).

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "enomr/scalar.hpp"

namespace enomr {

class NumericalBlowup : public std::runtime_error {
 public:
  NumericalBlowup(int stage, std::size_t index)
      : std::runtime_error("non-finite value in RK stage " + std::to_string(stage) + " at entry " +
                           std::to_string(index)),
        stage_(stage),
        index_(index) {}
  [[nodiscard]] int stage() const { return stage_; }
  [[nodiscard]] std::size_t index() const { return index_; }

 private:
  int stage_;
  std::size_t index_;
};

template <class Real>
void check_finite(const std::vector<Real>& u, int stage) {
  using std::isfinite;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!isfinite(u[i])) throw NumericalBlowup(stage, i);
  }
}

template <class Real>
struct RkWorkspace {
  std::vector<Real> stage;
  std::vector<Real> rhs;
  std::vector<Real> acc;
};

/// One SSP-RK3 step in place.
template <class Real, class Rhs>
void ssp_rk3_step(std::vector<Real>& u, const Real& t, const Real& dt, Rhs&& rhs, RkWorkspace<Real>& ws) {
  const std::size_t n = u.size();
  ws.stage.resize(n);
  ws.rhs.resize(n);

  rhs(u, t, ws.rhs);
  for (std::size_t i = 0; i < n; ++i) ws.stage[i] = u[i] + dt * ws.rhs[i];
  check_finite(ws.stage, 1);

  rhs(ws.stage, t + dt, ws.rhs);
  const Real q(0.75), o(0.25);
  for (std::size_t i = 0; i < n; ++i) ws.stage[i] = q * u[i] + o * (ws.stage[i] + dt * ws.rhs[i]);
  check_finite(ws.stage, 2);

  rhs(ws.stage, t + Real(0.5) * dt, ws.rhs);
  const Real third = Real(1) / Real(3), two_thirds = Real(2) / Real(3);
  for (std::size_t i = 0; i < n; ++i) u[i] = third * u[i] + two_thirds * (ws.stage[i] + dt * ws.rhs[i]);
  check_finite(u, 3);
}

template <class Real, class Rhs>
void ssp_rk3_step(std::vector<Real>& u, const Real& t, const Real& dt, Rhs&& rhs) {
  RkWorkspace<Real> ws;
  ssp_rk3_step(u, t, dt, rhs, ws);
}

struct LssprkTableau {
  int m = 2;
  std::vector<Rational> alphas;  // alpha_{m,0..m-1}
};

/// Exact tableau of the linear SSP-RK(m, m-1) family, 2 <= m <= 18.
LssprkTableau lssprk_tableau(int m);

/// One linear SSP-RK(m, m-1) step in place.
template <class Real, class Rhs>
void lssprk_step(std::vector<Real>& u, const Real& t, const Real& dt, Rhs&& rhs, const LssprkTableau& tab,
                 RkWorkspace<Real>& ws) {
  const std::size_t n = u.size();
  const int m = tab.m;
  ws.stage.assign(u.begin(), u.end());
  ws.rhs.resize(n);
  ws.acc.resize(n);
  const Real half_dt = Real(0.5) * dt;
  const Real a0 = from_rational<Real>(tab.alphas[0]);
  for (std::size_t i = 0; i < n; ++i) ws.acc[i] = a0 * u[i];
  for (int s = 1; s <= m - 1; ++s) {
    rhs(ws.stage, t + Real(s - 1) * half_dt, ws.rhs);
    for (std::size_t i = 0; i < n; ++i) ws.stage[i] += half_dt * ws.rhs[i];
    check_finite(ws.stage, s);
    if (s <= m - 2 && tab.alphas[static_cast<std::size_t>(s)] != 0) {
      const Real a = from_rational<Real>(tab.alphas[static_cast<std::size_t>(s)]);
      for (std::size_t i = 0; i < n; ++i) ws.acc[i] += a * ws.stage[i];
    }
  }
  rhs(ws.stage, t + Real(m - 1) * half_dt, ws.rhs);
  const Real last = from_rational<Real>(tab.alphas[static_cast<std::size_t>(m - 1)]);
  for (std::size_t i = 0; i < n; ++i) u[i] = ws.acc[i] + last * (ws.stage[i] + half_dt * ws.rhs[i]);
  check_finite(u, m);
}

template <class Real, class Rhs>
void lssprk_step(std::vector<Real>& u, const Real& t, const Real& dt, Rhs&& rhs, const LssprkTableau& tab) {
  RkWorkspace<Real> ws;
  lssprk_step(u, t, dt, rhs, tab, ws);
}

/// Coefficients of the one-step amplification polynomial R(z) for u' = lambda u,
/// z = lambda dt, in exact arithmetic (index = power of z).
std::vector<Rational> lssprk_amplification(const LssprkTableau& tab);

}  // namespace enomr
