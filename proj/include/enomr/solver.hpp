#pragma once

// Structured-grid driver for the semi-discrete conservative scheme.
//
// The state vector holds interior points only (x fastest, components
// interleaved). Ghost layers live in an internal padded buffer that is
// rebuilt from the state on every right-hand-side evaluation.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "enomr/flux.hpp"
#include "enomr/physics.hpp"
#include "enomr/reconstruct.hpp"
#include "enomr/scalar.hpp"

namespace enomr {

template <class Real>
struct Grid {
  int dims = 1;
  int nx = 1;
  int ny = 1;
  Real x0{}, y0{};
  Real hx{}, hy{};
  int ghost = 3;

  [[nodiscard]] int gx() const { return ghost; }
  [[nodiscard]] int gy() const { return dims == 2 ? ghost : 0; }
  [[nodiscard]] int sx() const { return nx + 2 * gx(); }
  [[nodiscard]] int sy() const { return ny + 2 * gy(); }
  [[nodiscard]] std::size_t cells() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
  [[nodiscard]] Real x(int i) const { return x0 + Real(i) * hx; }
  [[nodiscard]] Real y(int j) const { return y0 + Real(j) * hy; }
  /// Padded-buffer cell index; i, j may address ghosts.
  [[nodiscard]] std::size_t padded(int i, int j) const {
    return static_cast<std::size_t>(j + gy()) * static_cast<std::size_t>(sx()) + static_cast<std::size_t>(i + gx());
  }
  [[nodiscard]] std::size_t interior(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(i);
  }
};

/// Periodic grid over [a, b): n = (b - a)/h points, the right end excluded.
template <class Real>
Grid<Real> periodic_grid_1d(const Real& a, const Real& b, int n, int ghost) {
  Grid<Real> g;
  g.dims = 1;
  g.nx = n;
  g.x0 = a;
  g.hx = (b - a) / Real(n);
  g.hy = g.hx;
  g.ghost = ghost;
  return g;
}

/// Node grid over [a, b] with both ends included: `intervals` + 1 points.
template <class Real>
Grid<Real> node_grid_1d(const Real& a, const Real& b, int intervals, int ghost) {
  Grid<Real> g;
  g.dims = 1;
  g.nx = intervals + 1;
  g.x0 = a;
  g.hx = (b - a) / Real(intervals);
  g.hy = g.hx;
  g.ghost = ghost;
  return g;
}

template <class Real>
Grid<Real> node_grid_2d(const Real& ax, const Real& bx, int nx_points, const Real& ay, const Real& by, int ny_points,
                        int ghost) {
  if (nx_points < 2 || ny_points < 2) throw std::invalid_argument("2D grid needs at least 2 points per axis");
  Grid<Real> g;
  g.dims = 2;
  g.nx = nx_points;
  g.ny = ny_points;
  g.x0 = ax;
  g.y0 = ay;
  g.hx = (bx - ax) / Real(nx_points - 1);
  g.hy = (by - ay) / Real(ny_points - 1);
  g.ghost = ghost;
  return g;
}

enum class BcKind { Periodic, NonReflective, Reflective, Dirichlet, TimeDependent };

enum Side { kLeft = 0, kRight = 1, kBottom = 2, kTop = 3 };

template <class Real>
struct SideBc {
  BcKind kind = BcKind::NonReflective;
  std::vector<Real> state;  // Dirichlet
  std::function<void(const Real& t, const Real& x, const Real& y, Real* out)> profile;  // TimeDependent
  // Where the tangential coordinate exceeds `switch_at`, `beyond` applies instead.
  std::optional<Real> switch_at;
  BcKind beyond = BcKind::Reflective;

  static SideBc of(BcKind k) {
    SideBc s;
    s.kind = k;
    return s;
  }
};

template <class Real>
struct BoundaryConditions {
  std::array<SideBc<Real>, 4> sides;

  static BoundaryConditions all(BcKind k) {
    BoundaryConditions b;
    for (auto& s : b.sides) s = SideBc<Real>::of(k);
    return b;
  }

  void validate(int dims, int nvars) const {
    for (int axis = 0; axis < dims; ++axis) {
      const bool lo = sides[2 * axis].kind == BcKind::Periodic;
      const bool hi = sides[2 * axis + 1].kind == BcKind::Periodic;
      if (lo != hi) throw std::invalid_argument("periodic boundaries must be paired on opposite sides");
    }
    for (int s = 0; s < 2 * dims; ++s) {
      const auto& side = sides[s];
      if (side.kind == BcKind::Dirichlet && static_cast<int>(side.state.size()) != nvars) {
        throw std::invalid_argument("Dirichlet state has the wrong number of components");
      }
      if (side.kind == BcKind::TimeDependent && !side.profile) {
        throw std::invalid_argument("time-dependent boundary needs a profile");
      }
      if (side.switch_at && (side.kind == BcKind::Periodic || side.beyond == BcKind::Periodic)) {
        throw std::invalid_argument("periodic boundaries cannot be piecewise");
      }
    }
  }
};

/// Calls fn(begin, end, worker) over [0, n) split into contiguous chunks.
template <class Fn>
void parallel_for(int n, int threads, Fn&& fn) {
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    fn(0, n, 0);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
  pool.reserve(static_cast<std::size_t>(threads - 1));
  const int chunk = (n + threads - 1) / threads;
  auto guarded = [&](int b, int e, int w) {
    try {
      fn(b, e, w);
    } catch (...) {
      errors[static_cast<std::size_t>(w)] = std::current_exception();
    }
  };
  for (int w = 1; w < threads; ++w) {
    const int b = w * chunk, e = std::min(n, b + chunk);
    if (b < e) pool.emplace_back(guarded, b, e, w);
  }
  guarded(0, std::min(n, chunk), 0);
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

/// Thread count from ENOMR_THREADS, or 1.
inline int threads_from_env() {
  if (const char* v = std::getenv("ENOMR_THREADS")) {
    try {
      return std::max(1, std::stoi(v));
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("ENOMR_THREADS is not an integer: ") + v);
    }
  }
  return 1;
}

template <class Real, class Model>
class Solver {
 public:
  static constexpr int kVars = Model::kVars;

  Solver(Model model, const Scheme& scheme, Grid<Real> grid, BoundaryConditions<Real> bc, int threads = 1)
      : model_(std::move(model)), rec_(scheme), grid_(grid), bc_(std::move(bc)), threads_(std::max(1, threads)) {
    if (grid_.ghost < rec_.radius()) throw std::invalid_argument("ghost width smaller than the scheme radius");
    if (grid_.dims != Model::kDims) throw std::invalid_argument("grid and model dimensions differ");
    if (grid_.nx < rec_.radius() || (grid_.dims == 2 && grid_.ny < rec_.radius())) {
      throw std::invalid_argument("grid too small for the scheme stencil");
    }
    bc_.validate(grid_.dims, kVars);
    padded_.assign(static_cast<std::size_t>(grid_.sx()) * grid_.sy() * kVars, Real(0));
    work_.resize(static_cast<std::size_t>(threads_));
  }

  [[nodiscard]] const Grid<Real>& grid() const { return grid_; }
  [[nodiscard]] const Model& model() const { return model_; }
  [[nodiscard]] const Reconstructor<Real>& reconstructor() const { return rec_; }
  [[nodiscard]] const BoundaryConditions<Real>& boundary() const { return bc_; }
  [[nodiscard]] std::size_t state_size() const { return grid_.cells() * kVars; }
  [[nodiscard]] int threads() const { return threads_; }

  /// Net outflow rate of each conserved component through the domain boundary
  /// (sum of face fluxes times face length) from the last rhs evaluation.
  [[nodiscard]] const std::array<Real, kVars>& last_outflow() const { return outflow_; }

  /// Copies the state into the padded buffer and fills every ghost layer.
  void fill_ghosts(const std::vector<Real>& u, const Real& t) {
    if (u.size() != state_size()) throw std::invalid_argument("state size does not match the grid");
    const Grid<Real>& g = grid_;
    for (int j = 0; j < g.ny; ++j) {
      std::copy_n(u.begin() + static_cast<std::ptrdiff_t>(g.interior(0, j) * kVars), g.nx * kVars,
                  padded_.begin() + static_cast<std::ptrdiff_t>(g.padded(0, j) * kVars));
    }
    for (int j = 0; j < g.ny; ++j) fill_axis(0, j, t);
    if (g.dims == 2) {
      for (int i = -g.gx(); i < g.nx + g.gx(); ++i) fill_axis(1, i, t);
    }
  }

  /// Padded state after fill_ghosts (for inspection and tests).
  [[nodiscard]] const std::vector<Real>& padded() const { return padded_; }
  [[nodiscard]] const Real* padded_cell(int i, int j = 0) const { return padded_.data() + grid_.padded(i, j) * kVars; }

  /// dudt = -(dF/dx + dG/dy) + S evaluated with the configured scheme.
  void rhs(const std::vector<Real>& u, const Real& t, std::vector<Real>& dudt) {
    fill_ghosts(u, t);
    const Grid<Real>& g = grid_;
    dudt.assign(state_size(), Real(0));
    outflow_.fill(Real(0));

    sweep(0, dudt);
    if (g.dims == 2) sweep(1, dudt);

    if (model_.has_source()) {
      std::array<Real, kVars> s;
      for (std::size_t c = 0; c < g.cells(); ++c) {
        model_.source(u.data() + c * kVars, s.data());
        for (int k = 0; k < kVars; ++k) dudt[c * kVars + k] += s[k];
      }
    }
  }

  /// Largest wave speed over all points and directions.
  [[nodiscard]] Real max_wave_speed(const std::vector<Real>& u) const {
    Real a(0);
    std::array<Real, kVars> swapped;
    for (std::size_t c = 0; c < grid_.cells(); ++c) {
      const Real* p = u.data() + c * kVars;
      if (!model_.physical(p)) {
        throw NonPhysicalState("non-physical state at " + cell_label(c), static_cast<std::ptrdiff_t>(c));
      }
      a = std::max(a, model_.max_speed(p));
      if (grid_.dims == 2) {
        std::copy_n(p, kVars, swapped.begin());
        std::swap(swapped[1], swapped[2]);
        a = std::max(a, model_.max_speed(swapped.data()));
      }
    }
    return a;
  }

  [[nodiscard]] std::string cell_label(std::size_t c) const {
    const int i = static_cast<int>(c % static_cast<std::size_t>(grid_.nx));
    const int j = static_cast<int>(c / static_cast<std::size_t>(grid_.nx));
    std::string s = "cell (i=" + std::to_string(i);
    if (grid_.dims == 2) s += ", j=" + std::to_string(j);
    s += ", x=" + std::to_string(to_double(grid_.x(i)));
    if (grid_.dims == 2) s += ", y=" + std::to_string(to_double(grid_.y(j)));
    return s + ")";
  }

 private:
  struct Work {
    std::vector<Real> line;
    std::vector<Real> fhat;
    LineWorkspace<Real> ws;
  };

  void sweep(int axis, std::vector<Real>& dudt) {
    const Grid<Real>& g = grid_;
    const int nlines = axis == 0 ? g.ny : g.nx;
    const int n = axis == 0 ? g.nx : g.ny;
    const int gw = g.ghost;
    const Real inv_h = Real(1) / (axis == 0 ? g.hx : g.hy);
    const int mom_a = model_.momentum(0), mom_b = model_.momentum(1);
    const bool swap = axis == 1 && mom_a >= 0 && kVars > 2;
    std::vector<std::array<Real, kVars>> edge_lo(static_cast<std::size_t>(nlines)), edge_hi(edge_lo.size());

    parallel_for(nlines, threads_, [&](int begin, int end, int worker) {
      Work& w = work_[static_cast<std::size_t>(worker)];
      const int len = n + 2 * gw;
      w.line.resize(static_cast<std::size_t>(len) * kVars);
      w.fhat.resize(static_cast<std::size_t>(n + 1) * kVars);
      for (int line = begin; line < end; ++line) {
        // gather the line (components swapped for y so the model sees its normal direction as x)
        for (int k = -gw; k < n + gw; ++k) {
          const Real* src = axis == 0 ? padded_cell(k, line) : padded_cell(line, k);
          Real* dst = w.line.data() + static_cast<std::size_t>(k + gw) * kVars;
          std::copy_n(src, kVars, dst);
          if (swap) std::swap(dst[mom_a], dst[mom_b]);
        }
        Real alpha(0);
        for (int k = 0; k < n; ++k) {
          const Real* p = w.line.data() + static_cast<std::size_t>(k + gw) * kVars;
          if (!model_.physical(p)) {
            const std::size_t c = axis == 0 ? g.interior(k, line) : g.interior(line, k);
            throw NonPhysicalState("non-physical state at " + cell_label(c), static_cast<std::ptrdiff_t>(c));
          }
          alpha = std::max(alpha, model_.max_speed(p));
        }
        line_interface_fluxes(model_, rec_, w.line.data(), len, gw - 1, n + 1, alpha, w.fhat.data(), w.ws);
        if (swap) {
          for (int k = 0; k <= n; ++k) std::swap(w.fhat[k * kVars + mom_a], w.fhat[k * kVars + mom_b]);
        }
        for (int k = 0; k < n; ++k) {
          const std::size_t c = axis == 0 ? g.interior(k, line) : g.interior(line, k);
          for (int q = 0; q < kVars; ++q) {
            dudt[c * kVars + q] -= (w.fhat[(k + 1) * kVars + q] - w.fhat[k * kVars + q]) * inv_h;
          }
        }
        for (int q = 0; q < kVars; ++q) {
          edge_lo[line][q] = w.fhat[q];
          edge_hi[line][q] = w.fhat[static_cast<std::size_t>(n) * kVars + q];
        }
      }
    });

    // fixed-order reduction keeps the result independent of the thread count
    const Real face = g.dims == 2 ? (axis == 0 ? g.hy : g.hx) : Real(1);
    for (int line = 0; line < nlines; ++line) {
      for (int q = 0; q < kVars; ++q) outflow_[q] += (edge_hi[line][q] - edge_lo[line][q]) * face;
    }
  }

  BcKind kind_at(const SideBc<Real>& s, const Real& tangential) const {
    if (s.switch_at && tangential > *s.switch_at) return s.beyond;
    return s.kind;
  }

  // Fills the ghosts of one line along `axis`; `line` is the fixed index of the other axis.
  void fill_axis(int axis, int line, const Real& t) {
    const Grid<Real>& g = grid_;
    const int n = axis == 0 ? g.nx : g.ny;
    const int gw = axis == 0 ? g.gx() : g.gy();
    auto cell = [&](int k) -> Real* {
      return padded_.data() + (axis == 0 ? g.padded(k, line) : g.padded(line, k)) * kVars;
    };
    const int normal = model_.momentum(axis);
    for (int side = 0; side < 2; ++side) {
      const SideBc<Real>& bc = bc_.sides[2 * axis + side];
      const Real tangential = axis == 0 ? g.y(line) : g.x(line);
      const BcKind kind = kind_at(bc, tangential);
      for (int k = 1; k <= gw; ++k) {
        const int ghost = side == 0 ? -k : n - 1 + k;
        Real* dst = cell(ghost);
        switch (kind) {
          case BcKind::Periodic:
            std::copy_n(cell(side == 0 ? n - k : k - 1), kVars, dst);
            break;
          case BcKind::NonReflective:
            std::copy_n(cell(side == 0 ? 0 : n - 1), kVars, dst);
            break;
          case BcKind::Reflective: {
            const int src = side == 0 ? std::min(k, n - 1) : std::max(n - 1 - k, 0);
            std::copy_n(cell(src), kVars, dst);
            if (normal >= 0) dst[normal] = -dst[normal];
            break;
          }
          case BcKind::Dirichlet:
            std::copy(bc.state.begin(), bc.state.end(), dst);
            break;
          case BcKind::TimeDependent: {
            const Real x = axis == 0 ? g.x(ghost) : g.x(line);
            const Real y = axis == 0 ? g.y(line) : g.y(ghost);
            bc.profile(t, x, y, dst);
            break;
          }
        }
      }
    }
  }

  Model model_;
  Reconstructor<Real> rec_;
  Grid<Real> grid_;
  BoundaryConditions<Real> bc_;
  int threads_;
  std::vector<Real> padded_;
  std::vector<Work> work_;
  std::array<Real, kVars> outflow_{};
};

/// Mirror-averages the state about the plane x = `plane` (aligned with a grid
/// point or midway between two), antisymmetrizing component `odd`.
template <class Real>
void enforce_symmetry(const Grid<Real>& g, int nvars, std::vector<Real>& u, const Real& plane, int odd) {
  const double twice = to_double(Real(Real(2) * (plane - g.x0) / g.hx));
  const double rounded = std::round(twice);
  if (std::abs(twice - rounded) > 1e-9) throw std::invalid_argument("symmetry plane is not aligned with the grid");
  const int s = static_cast<int>(rounded);
  if (s != g.nx - 1) throw std::invalid_argument("grid is not symmetric about the symmetry plane");
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; 2 * i <= s; ++i) {
      const int m = s - i;
      Real* a = u.data() + g.interior(i, j) * static_cast<std::size_t>(nvars);
      Real* b = u.data() + g.interior(m, j) * static_cast<std::size_t>(nvars);
      for (int c = 0; c < nvars; ++c) {
        if (c == odd) {
          const Real v = Real(0.5) * (a[c] - b[c]);
          a[c] = v;
          b[c] = -v;
        } else {
          const Real v = Real(0.5) * (a[c] + b[c]);
          a[c] = v;
          b[c] = v;
        }
      }
    }
  }
}

/// Largest |u(i) - S u(mirror i)| over the grid (S flips component `odd`).
template <class Real>
double asymmetry(const Grid<Real>& g, int nvars, const std::vector<Real>& u, int odd) {
  double worst = 0;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const int m = g.nx - 1 - i;
      for (int c = 0; c < nvars; ++c) {
        const Real a = u[g.interior(i, j) * nvars + c];
        const Real b = u[g.interior(m, j) * nvars + c];
        const double d = std::abs(to_double(c == odd ? Real(a + b) : Real(a - b)));
        worst = std::max(worst, d);
      }
    }
  }
  return worst;
}

/// Snapshot CSV: x[,y],names...; rows in row-major order (x fastest).
template <class Real>
void write_field_csv(std::ostream& os, const Grid<Real>& g, int nvars, const std::vector<Real>& u,
                     const std::vector<std::string>& names) {
  os << "x";
  if (g.dims == 2) os << ",y";
  for (const auto& n : names) os << ',' << n;
  os << '\n';
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      os << format_number(g.x(i));
      if (g.dims == 2) os << ',' << format_number(g.y(j));
      for (int c = 0; c < nvars; ++c) os << ',' << format_number(u[g.interior(i, j) * nvars + c]);
      os << '\n';
    }
  }
}

}  // namespace enomr
