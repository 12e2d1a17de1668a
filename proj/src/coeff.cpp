#include "enomr/coeff.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace enomr {

using Matrix = std::vector<std::vector<Rational>>;

std::string Stencil::label() const {
  std::string s = "S[j";
  if (m > 0) s += "-" + std::to_string(m);
  s += ":j";
  if (n > 0) s += "+" + std::to_string(n);
  return s + "]";
}

void check_stencil(const Stencil& s) {
  if (s.m < 0 || s.n < 0) throw std::invalid_argument("stencil offsets must be non-negative: " + s.label());
  if (s.width() > kMaxStencilWidth) {
    throw std::invalid_argument("stencil width " + std::to_string(s.width()) + " exceeds the supported maximum of 17");
  }
}

const std::vector<Stencil>& candidate_stencils() {
  static const std::vector<Stencil> pool = {
      {8, 8}, {7, 8}, {8, 7}, {7, 7}, {8, 6}, {6, 7}, {7, 6}, {6, 6}, {7, 5}, {5, 6},
      {6, 5}, {5, 5}, {6, 4}, {4, 5}, {5, 4}, {4, 4}, {5, 3}, {3, 4}, {4, 3}, {3, 3},
      {2, 3}, {3, 2}, {2, 2}, {1, 2}, {2, 1}, {1, 1}, {0, 1}, {1, 0}, {0, 0},
  };
  return pool;
}

std::vector<Stencil> candidate_pool(int r) {
  if (r < 1 || r > 9) throw std::invalid_argument("candidate pool half-width r must be in [1, 9]");
  std::vector<Stencil> out;
  for (const auto& s : candidate_stencils()) {
    if (s.m <= r - 1 && s.n <= r - 1) out.push_back(s);
  }
  return out;
}

namespace {

Rational rpow(const Rational& x, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Falling factorial q (q-1) ... (q-l+1).
BigInt falling(int q, int l) {
  BigInt f = 1;
  for (int i = 0; i < l; ++i) f *= (q - i);
  return f;
}

Matrix invert(Matrix a) {
  const std::size_t n = a.size();
  Matrix inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw std::logic_error("singular moment matrix");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    const Rational p = a[col][col];
    for (std::size_t k = 0; k < n; ++k) {
      a[col][k] /= p;
      inv[col][k] /= p;
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col] == 0) continue;
      const Rational factor = a[row][col];
      for (std::size_t k = 0; k < n; ++k) {
        a[row][k] -= factor * a[col][k];
        inv[row][k] -= factor * inv[col][k];
      }
    }
  }
  return inv;
}

Matrix compute_polynomial_weights(const Stencil& s) {
  // moments[k][q] = integral of x^q over cell k (k = -m..n)
  const int w = s.width();
  Matrix moments(w, std::vector<Rational>(w));
  for (int k = 0; k < w; ++k) {
    const Rational left = Rational(2 * (k - s.m) - 1, 2);
    const Rational right = Rational(2 * (k - s.m) + 1, 2);
    for (int q = 0; q < w; ++q) {
      moments[k][q] = (rpow(right, q + 1) - rpow(left, q + 1)) / (q + 1);
    }
  }
  return invert(std::move(moments));
}

}  // namespace

std::vector<std::vector<Rational>> polynomial_weights(const Stencil& s) {
  check_stencil(s);
  static std::mutex mutex;
  static std::map<std::pair<int, int>, Matrix> cache;
  std::lock_guard lock(mutex);
  auto key = std::make_pair(s.m, s.n);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, compute_polynomial_weights(s)).first;
  return it->second;
}

std::vector<Rational> generate_flux_coeffs(const Stencil& s) {
  const Matrix weights = polynomial_weights(s);
  const int w = s.width();
  std::vector<Rational> a(w, Rational(0));
  const Rational half(1, 2);
  for (int q = 0; q < w; ++q) {
    const Rational xq = rpow(half, q);
    for (int l = 0; l < w; ++l) a[l] += xq * weights[q][l];
  }
  return a;
}

std::vector<Rational> generate_is_coeffs(const Stencil& s) {
  check_stencil(s);
  if (s.width() == 1) return {Rational(0)};
  const Matrix weights = polynomial_weights(s);
  const int d = s.degree();
  const Rational scale(factorial(d));
  std::vector<Rational> b(s.width());
  for (int l = 0; l < s.width(); ++l) b[l] = scale * weights[d][l];
  return b;
}

CoefficientSet generate_coefficient_set(const Stencil& s) {
  return {s, generate_flux_coeffs(s), generate_is_coeffs(s)};
}

AnchoredCoeffs mirror_coeffs(std::span<const Rational> coeffs, const Stencil& s, int anchor) {
  check_stencil(s);
  if (static_cast<int>(coeffs.size()) != s.width()) {
    throw std::invalid_argument("coefficient count does not match stencil width for " + s.label());
  }
  AnchoredCoeffs out;
  out.coeffs.assign(coeffs.rbegin(), coeffs.rend());
  out.stencil = Stencil{s.n, s.m};
  out.anchor = 1 - anchor;
  return out;
}

JiangShuForm generate_jiang_shu_form(const Stencil& s) {
  check_stencil(s);
  JiangShuForm form;
  form.stencil = s;
  const int d = s.degree();
  if (d == 0) return form;
  const Matrix weights = polynomial_weights(s);
  form.derivative_weights.assign(weights.begin() + 1, weights.end());

  // integral over [-1/2, 1/2] of x^e
  auto cell_moment = [](int e) -> Rational {
    if (e % 2 == 1) return Rational(0);
    return Rational(2) * rpow(Rational(1, 2), e + 1) / (e + 1);
  };

  form.gram.assign(d, std::vector<Rational>(d, Rational(0)));
  for (int q1 = 1; q1 <= d; ++q1) {
    for (int q2 = 1; q2 <= d; ++q2) {
      Rational g = 0;
      for (int l = 1; l <= std::min(q1, q2); ++l) {
        g += Rational(falling(q1, l) * falling(q2, l)) * cell_moment(q1 - l + q2 - l);
      }
      form.gram[q1 - 1][q2 - 1] = g;
    }
  }
  return form;
}

Rational evaluate_jiang_shu(const JiangShuForm& form, std::span<const Rational> samples) {
  if (static_cast<int>(samples.size()) != form.stencil.width()) {
    throw std::invalid_argument("sample count does not match stencil width");
  }
  const std::size_t d = form.derivative_weights.size();
  std::vector<Rational> c(d, Rational(0));
  for (std::size_t q = 0; q < d; ++q) {
    for (std::size_t l = 0; l < samples.size(); ++l) c[q] += form.derivative_weights[q][l] * samples[l];
  }
  Rational beta = 0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < d; ++k) beta += c[i] * form.gram[i][k] * c[k];
  }
  return beta;
}

JiangShuSquares jiang_shu_squares(const Stencil& s) {
  const JiangShuForm form = generate_jiang_shu_form(s);
  JiangShuSquares out;
  out.stencil = s;
  const std::size_t d = form.gram.size();
  const std::size_t w = static_cast<std::size_t>(s.width());
  // G = L D L^T with unit lower-triangular L
  Matrix lower(d, std::vector<Rational>(d, Rational(0)));
  std::vector<Rational> diag(d, Rational(0));
  for (std::size_t j = 0; j < d; ++j) {
    Rational dj = form.gram[j][j];
    for (std::size_t k = 0; k < j; ++k) dj -= lower[j][k] * lower[j][k] * diag[k];
    diag[j] = dj;
    lower[j][j] = 1;
    for (std::size_t i = j + 1; i < d; ++i) {
      Rational v = form.gram[i][j];
      for (std::size_t k = 0; k < j; ++k) v -= lower[i][k] * lower[j][k] * diag[k];
      lower[i][j] = v / dj;
    }
  }
  // beta = sum_i D_i ((L^T c)_i)^2 and c = derivative_weights * f
  out.weights = diag;
  out.rows.assign(d, std::vector<Rational>(w, Rational(0)));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = i; k < d; ++k) {
      for (std::size_t l = 0; l < w; ++l) out.rows[i][l] += lower[k][i] * form.derivative_weights[k][l];
    }
  }
  return out;
}

bool ValidationReport::consistent() const {
  return std::all_of(mismatches.begin(), mismatches.end(), [](const auto& mm) { return mm.published_erratum; });
}

int ValidationReport::errata() const {
  return static_cast<int>(
      std::count_if(mismatches.begin(), mismatches.end(), [](const auto& mm) { return mm.published_erratum; }));
}

ValidationReport validate_against_tables(std::span<const ReferenceEntry> tables) {
  ValidationReport report;
  for (const auto& entry : tables) {
    ++report.stencils_checked;
    const auto before = report.mismatches.size();
    const CoefficientSet generated = generate_coefficient_set(entry.stencil);
    auto compare = [&](const std::vector<Rational>& published, const std::vector<Rational>& actual,
                       CoefficientMismatch::Kind kind, const Rational& column_sum) {
      if (published.size() != actual.size()) {
        report.mismatches.push_back({entry.stencil, CoefficientMismatch::Kind::Shape, 0,
                                     Rational(static_cast<long>(published.size())),
                                     Rational(static_cast<long>(actual.size()))});
        return;
      }
      const auto first = report.mismatches.size();
      Rational published_sum = 0;
      for (std::size_t i = 0; i < published.size(); ++i) {
        published_sum += published[i];
        if (published[i] != actual[i]) {
          report.mismatches.push_back(
              {entry.stencil, kind, static_cast<int>(i) - entry.stencil.m, published[i], actual[i]});
        }
      }
      Rational generated_sum = 0;
      for (const auto& v : actual) generated_sum += v;
      const bool erratum = published_sum != column_sum && generated_sum == column_sum;
      for (auto i = first; i < report.mismatches.size(); ++i) report.mismatches[i].published_erratum = erratum;
    };
    compare(entry.flux_coeffs, generated.flux_coeffs, CoefficientMismatch::Kind::Flux, Rational(1));
    // A one-point stencil has no tabulated indicator.
    if (entry.stencil.width() > 1) {
      compare(entry.is_coeffs, generated.is_coeffs, CoefficientMismatch::Kind::Indicator, Rational(0));
    }
    if (report.mismatches.size() == before) ++report.stencils_matched;
  }
  return report;
}

ValidationReport validate_against_tables() { return validate_against_tables(reference_tables()); }

void write_report(std::ostream& os, const ValidationReport& report) {
  os << "stencils matched exactly: " << report.stencils_matched << "/" << report.stencils_checked << "\n";
  os << "mismatched entries: " << report.mismatches.size() << " (published errata: " << report.errata() << ")\n";
  for (const auto& mm : report.mismatches) {
    const char* kind = mm.kind == CoefficientMismatch::Kind::Flux        ? "flux"
                       : mm.kind == CoefficientMismatch::Kind::Indicator ? "indicator"
                                                                         : "shape";
    os << "mismatch " << mm.stencil.label() << " " << kind << " l=" << mm.l << " published " << mm.expected
       << " generated " << mm.actual << (mm.published_erratum ? " [published erratum: column sum broken]" : "")
       << "\n";
  }
}

void write_coefficients_csv(std::ostream& os, std::span<const CoefficientSet> sets) {
  os << "stencil,kind,l,numerator,denominator\n";
  for (const auto& set : sets) {
    auto emit = [&](const std::vector<Rational>& v, const char* kind) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        os << set.stencil.label() << "," << kind << "," << static_cast<int>(i) - set.stencil.m << ","
           << boost::multiprecision::numerator(v[i]) << "," << boost::multiprecision::denominator(v[i]) << "\n";
      }
    };
    emit(set.flux_coeffs, "flux");
    emit(set.is_coeffs, "indicator");
  }
}

}  // namespace enomr
