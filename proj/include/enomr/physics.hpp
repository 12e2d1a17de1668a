#pragma once

// Equation models. Every model exposes the x-direction flux; the 2D driver
// obtains y-direction quantities by swapping the two momentum components.

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace enomr {

class NonPhysicalState : public std::runtime_error {
 public:
  NonPhysicalState(const std::string& what, std::ptrdiff_t index = -1)
      : std::runtime_error(what), index_(index) {}
  [[nodiscard]] std::ptrdiff_t index() const { return index_; }

 private:
  std::ptrdiff_t index_;
};

/// How the interface flux is split before reconstruction.
///   Upwind: f^+ = f, no f^- (requires df/du >= 0)
///   LaxFriedrichs: global LF, component by component
///   Characteristic: global LF in the Roe-averaged characteristic fields
enum class SplitMode { Upwind, LaxFriedrichs, Characteristic };

enum class SourceKind { None, RayleighTaylor };

template <class Real>
Real advection_flux(const Real& u) {
  return u;
}

template <class Real>
Real burgers_flux(const Real& u) {
  return Real(0.5) * u * u;
}

template <class Real>
struct EulerState1D {
  Real rho, mom, energy;
};

template <class Real>
struct EulerState2D {
  Real rho, mom_x, mom_y, energy;
};

template <class Real>
EulerState1D<Real> euler1d_from_primitive(const Real& rho, const Real& u, const Real& p, const Real& gamma) {
  return {rho, rho * u, p / (gamma - Real(1)) + Real(0.5) * rho * u * u};
}

template <class Real>
EulerState2D<Real> euler2d_from_primitive(const Real& rho, const Real& u, const Real& v, const Real& p,
                                          const Real& gamma) {
  return {rho, rho * u, rho * v, p / (gamma - Real(1)) + Real(0.5) * rho * (u * u + v * v)};
}

template <class Real>
Real euler_pressure(const Real* u, int nvars, const Real& gamma) {
  Real kinetic(0);
  for (int k = 1; k < nvars - 1; ++k) kinetic += u[k] * u[k];
  return (gamma - Real(1)) * (u[nvars - 1] - Real(0.5) * kinetic / u[0]);
}

template <class Real>
bool euler_physical(const Real* u, int nvars, const Real& gamma) {
  // written so that NaN fails
  return u[0] > Real(0) && euler_pressure(u, nvars, gamma) > Real(0);
}

template <class Real>
void check_euler_state(const Real* u, int nvars, const Real& gamma, std::ptrdiff_t index = -1) {
  if (!euler_physical(u, nvars, gamma)) {
    throw NonPhysicalState("non-physical state (rho <= 0 or p <= 0)" +
                               (index >= 0 ? " at cell " + std::to_string(index) : std::string()),
                           index);
  }
}

/// x-direction Euler flux for nvars = 3 (1D) or 4 (2D).
template <class Real>
void euler_flux_x(const Real* u, int nvars, const Real& gamma, Real* f) {
  const Real vel = u[1] / u[0];
  const Real p = euler_pressure(u, nvars, gamma);
  f[0] = u[1];
  f[1] = u[1] * vel + p;
  if (nvars == 4) f[2] = u[2] * vel;
  f[nvars - 1] = (u[nvars - 1] + p) * vel;
}

template <class Real>
std::array<Real, 3> euler_flux_1d(const EulerState1D<Real>& s, const Real& gamma) {
  const std::array<Real, 3> u{s.rho, s.mom, s.energy};
  check_euler_state(u.data(), 3, gamma);
  std::array<Real, 3> f;
  euler_flux_x(u.data(), 3, gamma, f.data());
  return f;
}

template <class Real>
std::array<Real, 4> euler_flux_2d_x(const EulerState2D<Real>& s, const Real& gamma) {
  const std::array<Real, 4> u{s.rho, s.mom_x, s.mom_y, s.energy};
  check_euler_state(u.data(), 4, gamma);
  std::array<Real, 4> f;
  euler_flux_x(u.data(), 4, gamma, f.data());
  return f;
}

template <class Real>
std::array<Real, 4> euler_flux_2d_y(const EulerState2D<Real>& s, const Real& gamma) {
  const std::array<Real, 4> swapped{s.rho, s.mom_y, s.mom_x, s.energy};
  check_euler_state(swapped.data(), 4, gamma);
  std::array<Real, 4> f;
  euler_flux_x(swapped.data(), 4, gamma, f.data());
  std::swap(f[1], f[2]);
  return f;
}

/// Source increment for one cell (2D conserved ordering).
template <class Real>
std::array<Real, 4> apply_source(const EulerState2D<Real>& s, SourceKind kind) {
  if (kind == SourceKind::None) return {Real(0), Real(0), Real(0), Real(0)};
  return {Real(0), Real(0), s.rho, s.mom_y};
}

// ---------------------------------------------------------------------------
// Models used by the solver.

template <class Real>
struct AdvectionModel {
  static constexpr int kVars = 1;
  static constexpr int kDims = 1;
  SplitMode split = SplitMode::Upwind;

  void flux(const Real* u, Real* f) const { f[0] = u[0]; }
  Real max_speed(const Real*) const { return Real(1); }
  bool physical(const Real* u) const { return u[0] == u[0]; }
  int momentum(int) const { return -1; }
  bool has_source() const { return false; }
  void source(const Real*, Real*) const {}
};

template <class Real>
struct BurgersModel {
  static constexpr int kVars = 1;
  static constexpr int kDims = 1;
  SplitMode split = SplitMode::Upwind;

  void flux(const Real* u, Real* f) const { f[0] = Real(0.5) * u[0] * u[0]; }
  Real max_speed(const Real* u) const {
    using std::abs;
    return abs(u[0]);
  }
  bool physical(const Real* u) const { return u[0] == u[0]; }
  int momentum(int) const { return -1; }
  bool has_source() const { return false; }
  void source(const Real*, Real*) const {}
};

template <class Real, int Dims>
struct EulerModel {
  static constexpr int kVars = Dims + 2;
  static constexpr int kDims = Dims;
  SplitMode split = SplitMode::Characteristic;
  Real gamma = Real(1.4);
  SourceKind source_kind = SourceKind::None;

  void flux(const Real* u, Real* f) const { euler_flux_x(u, kVars, gamma, f); }
  Real max_speed(const Real* u) const {
    using std::abs;
    using std::sqrt;
    const Real p = euler_pressure(u, kVars, gamma);
    return abs(u[1] / u[0]) + sqrt(gamma * p / u[0]);
  }
  bool physical(const Real* u) const { return euler_physical(u, kVars, gamma); }
  /// Index of the momentum component normal to axis `dir`.
  int momentum(int dir) const { return 1 + dir; }
  bool has_source() const { return source_kind != SourceKind::None; }
  void source(const Real* u, Real* s) const {
    for (int k = 0; k < kVars; ++k) s[k] = Real(0);
    if (source_kind == SourceKind::RayleighTaylor && Dims == 2) {
      s[2] = u[0];
      s[3] = u[2];
    }
  }
};

template <class Real>
using Euler1DModel = EulerModel<Real, 1>;
template <class Real>
using Euler2DModel = EulerModel<Real, 2>;

}  // namespace enomr
