#pragma once

// Upwind flux reconstruction at x_{j+1/2} from point values f_{j-r+1..j+r-1}.
//
// All kernels take a window of 2r-1 values with f_j at index r-1. The f^-
// side is handled by the caller through reflection (see split_interface).

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "enomr/coeff.hpp"
#include "enomr/scalar.hpp"
#include "enomr/scheme.hpp"

namespace enomr {

template <class Real>
Real minmod(const Real& a, const Real& b) {
  using std::abs;
  if (a * b <= Real(0)) return Real(0);
  return abs(a) <= abs(b) ? a : b;
}

/// IS_0 = min(IS_L, IS_R) with
/// IS_L = max(|f_j - f_{j-1}|, |f_j - 2 f_{j-1} + f_{j-2}|) and IS_R its mirror.
/// `f` points at f_j; f[-2..2] must be valid.
template <class Real>
Real baseline_indicator(const Real* f) {
  using std::abs;
  const Real left = std::max(abs(f[0] - f[-1]), abs(f[0] - Real(2) * f[-1] + f[-2]));
  const Real right = std::max(abs(f[1] - f[0]), abs(f[0] - Real(2) * f[1] + f[2]));
  return std::min(left, right);
}

template <class Real>
Real baseline_indicator(std::span<const Real> five) {
  if (five.size() != 5) throw std::invalid_argument("baseline indicator needs f_{j-2..j+2}");
  return baseline_indicator(five.data() + 2);
}

/// |sum_l b_l f_{j+l}| over the stencil samples (ordered l = -m..n).
template <class Real>
Real stencil_indicator(std::span<const Real> is_coeffs, std::span<const Real> samples) {
  using std::abs;
  if (is_coeffs.size() != samples.size()) throw std::invalid_argument("indicator size mismatch");
  Real acc(0);
  for (std::size_t k = 0; k < samples.size(); ++k) acc += is_coeffs[k] * samples[k];
  return abs(acc);
}

template <class Real>
struct SelectionResult {
  Stencil chosen;
  bool fallback = false;
  Real flux{};
  int indicators_evaluated = 0;
};

template <class Real>
std::vector<Real> round_coeffs(std::span<const Rational> q) {
  std::vector<Real> out;
  out.reserve(q.size());
  for (const auto& v : q) out.push_back(from_rational<Real>(v));
  return out;
}

/// ENO-MR of order 2r-1.
template <class Real>
class EnoMr {
 public:
  struct Candidate {
    Stencil stencil;
    int start = 0;  // index of f_{j-m} in the window
    std::vector<Real> flux;
    std::vector<Real> indicator;
  };

  explicit EnoMr(int r) : r_(r) {
    if (r != 3 && r != 5 && r != 7 && r != 9) throw std::invalid_argument("ENO-MR needs r in {3,5,7,9}");
    for (const Stencil& s : candidate_pool(r)) {
      if (!s.two_sided()) continue;
      const CoefficientSet set = generate_coefficient_set(s);
      candidates_.push_back(Candidate{s, r - 1 - s.m, round_coeffs<Real>(set.flux_coeffs),
                                      round_coeffs<Real>(set.is_coeffs)});
    }
  }

  [[nodiscard]] int r() const { return r_; }
  [[nodiscard]] int window_size() const { return 2 * r_ - 1; }
  [[nodiscard]] const std::vector<Candidate>& candidates() const { return candidates_; }

  [[nodiscard]] SelectionResult<Real> select(std::span<const Real> window) const {
    check(window);
    SelectionResult<Real> out;
    out.flux = run<true>(window.data(), &out);
    return out;
  }

  [[nodiscard]] Real flux(std::span<const Real> window) const {
    check(window);
    return run<false>(window.data(), nullptr);
  }

  [[nodiscard]] Real flux(const Real* window) const { return run<false>(window, nullptr); }

 private:
  void check(std::span<const Real> window) const {
    if (static_cast<int>(window.size()) != window_size()) throw std::invalid_argument("ENO-MR window size");
  }

  template <bool Track>
  Real run(const Real* w, SelectionResult<Real>* info) const {
    using std::abs;
    const Real* f = w + (r_ - 1);
    const Real is0 = baseline_indicator(f);
    int evaluated = 0;
    for (const Candidate& c : candidates_) {
      const Real* s = w + c.start;
      const std::size_t width = c.indicator.size();
      Real acc(0);
      for (std::size_t k = 0; k < width; ++k) acc += c.indicator[k] * s[k];
      ++evaluated;
      if (abs(acc) < is0) {
        Real out(0);
        for (std::size_t k = 0; k < width; ++k) out += c.flux[k] * s[k];
        if constexpr (Track) {
          info->chosen = c.stencil;
          info->indicators_evaluated = evaluated;
        }
        return out;
      }
    }
    const Real a = f[1] - f[0];
    const Real b = f[0] - f[-1];
    const Real slope = minmod(a, b);
    if constexpr (Track) {
      info->fallback = true;
      info->indicators_evaluated = evaluated;
      if (slope == Real(0)) {
        info->chosen = Stencil{0, 0};
      } else if (slope == a) {
        info->chosen = Stencil{0, 1};
      } else {
        info->chosen = Stencil{1, 0};
      }
    }
    return f[0] + Real(0.5) * slope;
  }

  int r_;
  std::vector<Candidate> candidates_;
};

/// Jiang-Shu smoothness indicator of a stencil, evaluated as a sum of
/// weighted squares so the result is never negative.
template <class Real>
class JiangShuBeta {
 public:
  JiangShuBeta() = default;
  explicit JiangShuBeta(const Stencil& s) : width_(s.width()) {
    const JiangShuSquares sq = jiang_shu_squares(s);
    weights_ = round_coeffs<Real>(sq.weights);
    for (const auto& row : sq.rows) {
      auto rounded = round_coeffs<Real>(row);
      rows_.insert(rows_.end(), rounded.begin(), rounded.end());
    }
  }

  [[nodiscard]] int width() const { return width_; }

  /// `f` points at the first stencil sample.
  Real operator()(const Real* f) const {
    Real beta(0);
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      const Real* row = rows_.data() + i * static_cast<std::size_t>(width_);
      Real acc(0);
      for (int k = 0; k < width_; ++k) acc += row[k] * f[k];
      beta += weights_[i] * acc * acc;
    }
    return beta;
  }

 private:
  int width_ = 0;
  std::vector<Real> weights_;
  std::vector<Real> rows_;
};

/// beta of the k-th r-point sub-stencil S_{j-r+1+k}^{j+k}; `samples` holds its r values.
template <class Real>
Real jiang_shu_beta(std::span<const Real> samples, int r, int k) {
  if (r < 1 || k < 0 || k >= r || static_cast<int>(samples.size()) != r) {
    throw std::invalid_argument("jiang_shu_beta: bad sub-stencil");
  }
  const JiangShuBeta<Real> beta(Stencil{r - 1 - k, k});
  return beta(samples.data());
}

/// WENO-AO(5,3), WENO-AO(9,3) building block and WENO-AO(9,5,3).
template <class Real>
class WenoAo {
 public:
  WenoAo(SchemeKind kind, WenoParams params) : kind_(kind), params_(params) {
    if (kind == SchemeKind::EnoMr) throw std::invalid_argument("WenoAo needs a WENO-AO scheme kind");
    r_ = kind == SchemeKind::WenoAo53 ? 3 : 5;
    eps_ = Real(params.epsilon);
    g_hi_ = Real(params.gamma_hi);
    const Real g_lo(params.gamma_lo);
    d_[0] = (Real(1) - g_hi_) * (Real(1) - g_lo) * Real(0.5);
    d_[1] = (Real(1) - g_hi_) * g_lo;
    d_[2] = d_[0];
    for (int k = 0; k < 3; ++k) {
      const Stencil s{2 - k, k};
      low_flux_[k] = round_coeffs<Real>(generate_flux_coeffs(s));
      low_beta_[k] = JiangShuBeta<Real>(s);
    }
    five_flux_ = round_coeffs<Real>(generate_flux_coeffs(Stencil{2, 2}));
    five_beta_ = JiangShuBeta<Real>(Stencil{2, 2});
    if (r_ == 5) {
      nine_flux_ = round_coeffs<Real>(generate_flux_coeffs(Stencil{4, 4}));
      nine_beta_ = JiangShuBeta<Real>(Stencil{4, 4});
    }
  }

  [[nodiscard]] int r() const { return r_; }
  [[nodiscard]] int window_size() const { return 2 * r_ - 1; }

  [[nodiscard]] Real flux(std::span<const Real> window) const {
    if (static_cast<int>(window.size()) != window_size()) throw std::invalid_argument("WENO-AO window size");
    return flux(window.data());
  }

  Real flux(const Real* w) const {
    const Real* f = w + (r_ - 1);
    Low low;
    for (int k = 0; k < 3; ++k) {
      const Real* s = f - 2 + k;
      low.flux[k] = dot(low_flux_[k], s);
      low.beta[k] = low_beta_[k](s);
    }
    Real beta5;
    const Real p53 = combine(dot(five_flux_, f - 2), five_beta_(f - 2), low, &beta5);
    if (r_ == 3) return p53;

    Real beta9;
    const Real p93 = combine(dot(nine_flux_, f - 4), nine_beta_(f - 4), low, &beta9);
    using std::abs;
    const Real sigma = abs(beta9 - beta5);
    const Real a93 = g_hi_ * (Real(1) + sigma / (beta9 + eps_));
    const Real a53 = (Real(1) - g_hi_) * (Real(1) + sigma / (beta5 + eps_));
    const Real sum = a93 + a53;
    const Real w93 = a93 / sum;
    const Real w53 = a53 / sum;
    return w93 / g_hi_ * (p93 - (Real(1) - g_hi_) * p53) + w53 * p53;
  }

 private:
  struct Low {
    std::array<Real, 3> flux;
    std::array<Real, 3> beta;
  };

  static Real dot(const std::vector<Real>& c, const Real* f) {
    Real acc(0);
    for (std::size_t k = 0; k < c.size(); ++k) acc += c[k] * f[k];
    return acc;
  }

  Real ipow(Real x) const {
    Real out(1);
    for (int i = 0; i < params_.power; ++i) out *= x;
    return out;
  }

  // WENO-Z weights over {high, three 3-point stencils}.
  Real combine(const Real& f_hi, const Real& b_hi, const Low& low, Real* beta_hi_out) const {
    using std::abs;
    *beta_hi_out = b_hi;
    const Real tau = (abs(b_hi - low.beta[0]) + abs(b_hi - low.beta[1]) + abs(b_hi - low.beta[2])) / Real(3);
    const Real a_hi = g_hi_ * (Real(1) + ipow(tau / (b_hi + eps_)));
    std::array<Real, 3> a;
    Real sum = a_hi;
    for (int k = 0; k < 3; ++k) {
      a[k] = d_[k] * (Real(1) + ipow(tau / (low.beta[k] + eps_)));
      sum += a[k];
    }
    Real lin = f_hi;
    Real nonlin(0);
    for (int k = 0; k < 3; ++k) {
      lin -= d_[k] * low.flux[k];
      nonlin += a[k] / sum * low.flux[k];
    }
    return (a_hi / sum) / g_hi_ * lin + nonlin;
  }

  SchemeKind kind_;
  WenoParams params_;
  int r_ = 3;
  Real eps_{}, g_hi_{};
  std::array<Real, 3> d_{};
  std::array<std::vector<Real>, 3> low_flux_;
  std::array<JiangShuBeta<Real>, 3> low_beta_;
  std::vector<Real> five_flux_, nine_flux_;
  JiangShuBeta<Real> five_beta_, nine_beta_;
};

/// Scheme-dispatching reconstruction used by the solver.
template <class Real>
class Reconstructor {
 public:
  explicit Reconstructor(const Scheme& scheme) : scheme_(scheme) {
    if (scheme.kind == SchemeKind::EnoMr) {
      eno_.emplace_back(scheme.r);
    } else {
      weno_.emplace_back(scheme.kind, scheme.weno);
    }
  }

  [[nodiscard]] const Scheme& scheme() const { return scheme_; }
  /// Points needed on each side of an interface (the ghost width).
  [[nodiscard]] int radius() const { return scheme_.r; }

  /// f^+ at x_{j+1/2}; `w` holds f_{j-r+1..j+r-1}.
  Real upwind(const Real* w) const { return eno_.empty() ? weno_.front().flux(w) : eno_.front().flux(w); }

  Real upwind(std::span<const Real> w) const {
    if (static_cast<int>(w.size()) != scheme_.window_size()) throw std::invalid_argument("window size");
    return upwind(w.data());
  }

  /// f^-: the same kernel applied to the window reflected about x_{j+1/2}.
  /// `w` holds g_{j-r+1..j+r} (2r values).
  Real downwind(const Real* w) const {
    std::array<Real, 2 * 9 - 1> mirrored;
    const int n = 2 * scheme_.r - 1;
    for (int k = 0; k < n; ++k) mirrored[k] = w[2 * scheme_.r - 1 - k];
    return upwind(mirrored.data());
  }

  /// Split interface flux f^+(window) + f^-(window), both over cells j-r+1..j+r.
  Real split_interface(const Real* fplus, const Real* fminus) const { return upwind(fplus) + downwind(fminus); }

 private:
  Scheme scheme_;
  std::vector<EnoMr<Real>> eno_;
  std::vector<WenoAo<Real>> weno_;
};

}  // namespace enomr
