#pragma once

// Flux splitting, Roe-averaged eigensystems and the per-line interface flux
// kernel shared by the 1D and 2D drivers.

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "enomr/physics.hpp"
#include "enomr/reconstruct.hpp"

namespace enomr {

template <class Real>
struct SplitFluxPair {
  std::vector<Real> plus;
  std::vector<Real> minus;
};

/// f^{+-} = (f +- alpha u) / 2.
template <class Real>
SplitFluxPair<Real> lax_friedrichs_split(std::span<const Real> f, std::span<const Real> u, const Real& alpha) {
  if (!(alpha >= Real(0))) throw std::invalid_argument("Lax-Friedrichs alpha must be non-negative");
  if (f.size() != u.size()) throw std::invalid_argument("flux and state sample counts differ");
  SplitFluxPair<Real> out;
  out.plus.resize(f.size());
  out.minus.resize(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    out.plus[i] = Real(0.5) * (f[i] + alpha * u[i]);
    out.minus[i] = Real(0.5) * (f[i] - alpha * u[i]);
  }
  return out;
}

/// max |df/du| over a line of states (Model::kVars values each).
template <class Real, class Model>
Real wave_speed_bound(const Model& model, std::span<const Real> line) {
  constexpr int nv = Model::kVars;
  if (line.empty() || line.size() % nv != 0) throw std::invalid_argument("wave_speed_bound: bad line");
  Real alpha(0);
  const std::size_t n = line.size() / nv;
  for (std::size_t i = 0; i < n; ++i) {
    const Real* u = line.data() + i * nv;
    if (!model.physical(u)) {
      throw NonPhysicalState("non-physical state at cell " + std::to_string(i), static_cast<std::ptrdiff_t>(i));
    }
    alpha = std::max(alpha, model.max_speed(u));
  }
  return alpha;
}

template <class Real>
struct RoeState {
  Real rho, u, v, H, c;
};

/// Roe average from primitive velocity and total enthalpy.
template <class Real>
RoeState<Real> roe_average(const Real& rho_l, const Real& u_l, const Real& v_l, const Real& h_l, const Real& rho_r,
                           const Real& u_r, const Real& v_r, const Real& h_r, const Real& gamma) {
  using std::sqrt;
  if (!(rho_l > Real(0)) || !(rho_r > Real(0))) throw NonPhysicalState("Roe average of non-positive density");
  const Real sl = sqrt(rho_l);
  const Real sr = sqrt(rho_r);
  const Real inv = Real(1) / (sl + sr);
  RoeState<Real> s;
  s.rho = sl * sr;
  s.u = (sl * u_l + sr * u_r) * inv;
  s.v = (sl * v_l + sr * v_r) * inv;
  s.H = (sl * h_l + sr * h_r) * inv;
  const Real c2 = (gamma - Real(1)) * (s.H - Real(0.5) * (s.u * s.u + s.v * s.v));
  if (!(c2 > Real(0))) throw NonPhysicalState("Roe average with non-positive sound speed");
  s.c = sqrt(c2);
  return s;
}

/// Roe average of two conserved Euler states (nvars = 3 or 4, x-direction).
template <class Real>
RoeState<Real> roe_average(const Real* ul, const Real* ur, int nvars, const Real& gamma) {
  auto prim = [&](const Real* u, Real& rho, Real& vx, Real& vy, Real& h) {
    rho = u[0];
    vx = u[1] / u[0];
    vy = nvars == 4 ? u[2] / u[0] : Real(0);
    h = (u[nvars - 1] + euler_pressure(u, nvars, gamma)) / u[0];
  };
  Real rl, ul_, vl, hl, rr, ur_, vr, hr;
  prim(ul, rl, ul_, vl, hl);
  prim(ur, rr, ur_, vr, hr);
  if (!euler_physical(ul, nvars, gamma) || !euler_physical(ur, nvars, gamma)) {
    throw NonPhysicalState("Roe average of a non-physical state");
  }
  return roe_average(rl, ul_, vl, hl, rr, ur_, vr, hr, gamma);
}

template <class Real, int N>
struct CharacteristicFrame {
  std::array<std::array<Real, N>, N> left;   // rows: left eigenvectors
  std::array<std::array<Real, N>, N> right;  // columns: right eigenvectors
  std::array<Real, N> eigenvalues;
};

/// x-direction eigensystem of the Euler equations at a Roe state; N = 3 or 4.
template <class Real, int N>
CharacteristicFrame<Real, N> euler_frame(const RoeState<Real>& s, const Real& gamma) {
  static_assert(N == 3 || N == 4);
  const Real u = s.u, v = s.v, c = s.c, H = s.H;
  const Real q2 = N == 4 ? u * u + v * v : u * u;
  const Real b1 = (gamma - Real(1)) / (c * c);
  const Real b2 = Real(0.5) * q2 * b1;
  const Real half(0.5);
  CharacteristicFrame<Real, N> fr{};
  if constexpr (N == 3) {
    fr.eigenvalues = {u - c, u, u + c};
    fr.right = {{{Real(1), Real(1), Real(1)}, {u - c, u, u + c}, {H - u * c, half * q2, H + u * c}}};
    fr.left = {{{half * (b2 + u / c), half * (-b1 * u - Real(1) / c), half * b1},
                {Real(1) - b2, b1 * u, -b1},
                {half * (b2 - u / c), half * (-b1 * u + Real(1) / c), half * b1}}};
  } else {
    fr.eigenvalues = {u - c, u, u, u + c};
    fr.right = {{{Real(1), Real(1), Real(0), Real(1)},
                 {u - c, u, Real(0), u + c},
                 {v, v, Real(1), v},
                 {H - u * c, half * q2, v, H + u * c}}};
    fr.left = {{{half * (b2 + u / c), half * (-b1 * u - Real(1) / c), half * (-b1 * v), half * b1},
                {Real(1) - b2, b1 * u, b1 * v, -b1},
                {-v, Real(0), Real(1), Real(0)},
                {half * (b2 - u / c), half * (-b1 * u + Real(1) / c), half * (-b1 * v), half * b1}}};
  }
  return fr;
}

/// Flux Jacobian dF/dU in the x-direction at a Roe state, as R diag(lambda) L.
template <class Real, int N>
std::array<std::array<Real, N>, N> frame_jacobian(const CharacteristicFrame<Real, N>& fr) {
  std::array<std::array<Real, N>, N> a{};
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      Real s(0);
      for (int k = 0; k < N; ++k) s += fr.right[i][k] * fr.eigenvalues[k] * fr.left[k][j];
      a[i][j] = s;
    }
  return a;
}

inline constexpr int kMaxWindow = 18;

/// Numeric flux at x_{j+1/2} from 2r consecutive states and fluxes (cells
/// j-r+1..j+r, N components each): global LF in the characteristic fields of
/// `frame`, scalar reconstruction per field, projection back.
template <class Real, int N>
void characteristic_reconstruct(const Reconstructor<Real>& rec, const CharacteristicFrame<Real, N>& frame,
                                const Real* u, const Real* f, const Real& alpha, Real* out) {
  const int w = 2 * rec.radius();
  std::array<std::array<Real, kMaxWindow>, N> fp, fm;
  for (int k = 0; k < w; ++k) {
    const Real* uk = u + k * N;
    const Real* fk = f + k * N;
    for (int s = 0; s < N; ++s) {
      Real wu(0), wf(0);
      for (int c = 0; c < N; ++c) {
        wu += frame.left[s][c] * uk[c];
        wf += frame.left[s][c] * fk[c];
      }
      fp[s][k] = Real(0.5) * (wf + alpha * wu);
      fm[s][k] = Real(0.5) * (wf - alpha * wu);
    }
  }
  std::array<Real, N> g;
  for (int s = 0; s < N; ++s) g[s] = rec.split_interface(fp[s].data(), fm[s].data());
  for (int c = 0; c < N; ++c) {
    Real acc(0);
    for (int s = 0; s < N; ++s) acc += frame.right[c][s] * g[s];
    out[c] = acc;
  }
}

template <class Model>
inline constexpr bool kHasEigensystem = requires(Model m) { m.gamma; };

template <class Real>
struct LineWorkspace {
  std::vector<Real> f;       // ncells * nv, interleaved
  std::vector<Real> plus;    // nv * ncells, one contiguous row per component
  std::vector<Real> minus;
};

/// Interface fluxes on one line of `ncells` states (ghosts included,
/// interleaved components). Writes fhat for the interfaces between local cells
/// i and i+1, i = first .. first+count-1, into out[(i-first)*nv + c].
template <class Real, class Model>
void line_interface_fluxes(const Model& model, const Reconstructor<Real>& rec, const Real* u, int ncells,
                           int first, int count, const Real& alpha, Real* out, LineWorkspace<Real>& ws) {
  constexpr int nv = Model::kVars;
  const int r = rec.radius();
  ws.f.resize(static_cast<std::size_t>(ncells) * nv);
  for (int i = 0; i < ncells; ++i) model.flux(u + i * nv, ws.f.data() + i * nv);

  if (model.split == SplitMode::Characteristic) {
    if constexpr (kHasEigensystem<Model>) {
      for (int k = 0; k < count; ++k) {
        const int i = first + k;
        const RoeState<Real> roe = roe_average(u + i * nv, u + (i + 1) * nv, nv, model.gamma);
        const auto frame = euler_frame<Real, nv>(roe, model.gamma);
        const int s = i - r + 1;
        characteristic_reconstruct<Real, nv>(rec, frame, u + s * nv, ws.f.data() + s * nv, alpha, out + k * nv);
      }
      return;
    } else {
      throw std::invalid_argument("model has no eigensystem for characteristic splitting");
    }
  }

  const std::size_t n = static_cast<std::size_t>(ncells);
  ws.plus.resize(n * nv);
  const bool lf = model.split == SplitMode::LaxFriedrichs;
  if (lf) ws.minus.resize(n * nv);
  for (std::size_t i = 0; i < n; ++i) {
    for (int c = 0; c < nv; ++c) {
      const Real fv = ws.f[i * nv + c];
      if (lf) {
        const Real au = alpha * u[i * nv + c];
        ws.plus[c * n + i] = Real(0.5) * (fv + au);
        ws.minus[c * n + i] = Real(0.5) * (fv - au);
      } else {
        ws.plus[c * n + i] = fv;
      }
    }
  }
  for (int k = 0; k < count; ++k) {
    const int s = first + k - r + 1;
    for (int c = 0; c < nv; ++c) {
      const Real* p = ws.plus.data() + c * n + s;
      out[k * nv + c] = lf ? rec.split_interface(p, ws.minus.data() + c * n + s) : rec.upwind(p);
    }
  }
}

}  // namespace enomr
