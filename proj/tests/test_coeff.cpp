#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "enomr/coeff.hpp"

using namespace enomr;

namespace {

std::vector<Rational> rationals(std::initializer_list<const char*> items) {
  std::vector<Rational> v;
  for (const char* s : items) v.emplace_back(s);
  return v;
}

// Independent route to a_l: interpolate the primitive V(x) = integral of H at
// the w+1 cell boundaries and differentiate the Lagrange interpolant at
// x_{j+1/2}. For unit data on cell l, V jumps by one at every boundary to the
// right of that cell.
std::vector<Rational> primitive_route_flux(const Stencil& s) {
  const int w = s.width();
  std::vector<Rational> nodes(w + 1);
  for (int i = 0; i <= w; ++i) nodes[i] = Rational(2 * (i - s.m) - 1, 2);
  const Rational x(1, 2);
  // derivative of the i-th Lagrange basis at x
  auto basis_derivative = [&](int i) {
    Rational total = 0;
    for (int k = 0; k <= w; ++k) {
      if (k == i) continue;
      Rational term = Rational(1) / (nodes[i] - nodes[k]);
      for (int q = 0; q <= w; ++q) {
        if (q == i || q == k) continue;
        term *= (x - nodes[q]) / (nodes[i] - nodes[q]);
      }
      total += term;
    }
    return total;
  };
  std::vector<Rational> dl(w + 1);
  for (int i = 0; i <= w; ++i) dl[i] = basis_derivative(i);
  std::vector<Rational> a(w, Rational(0));
  for (int l = 0; l < w; ++l) {
    for (int i = l + 1; i <= w; ++i) a[l] += dl[i];
  }
  return a;
}

Rational binomial(int n, int k) {
  Rational r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Rational cell_average_of_monomial(int k, int q) {
  // integral of x^q over [k - 1/2, k + 1/2]
  Rational right(2 * k + 1, 2), left(2 * k - 1, 2);
  Rational pr = 1, pl = 1;
  for (int i = 0; i <= q; ++i) {
    pr *= right;
    pl *= left;
  }
  return (pr - pl) / (q + 1);
}

struct GaussRule {
  std::vector<long double> nodes, weights;
};

// Newton iteration on the Legendre polynomial P_n.
GaussRule gauss_legendre(int n) {
  GaussRule rule;
  const long double pi = 3.141592653589793238462643383279502884L;
  for (int i = 1; i <= n; ++i) {
    long double x = std::cos(pi * (i - 0.25L) / (n + 0.5L));
    long double dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      long double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      const long double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-19L) break;
    }
    rule.nodes.push_back(x);
    rule.weights.push_back(2 / ((1 - x * x) * dp * dp));
  }
  return rule;
}

}  // namespace

TEST_CASE("flux coefficients for the documented stencils") {
  CHECK(generate_flux_coeffs({0, 0}) == rationals({"1"}));
  CHECK(generate_flux_coeffs({1, 1}) == rationals({"-1/6", "5/6", "2/6"}));
  CHECK(generate_flux_coeffs({8, 8}).front() == Rational(56, 12252240));
  CHECK(generate_flux_coeffs({4, 3})[4] == Rational(743, 840));
}

TEST_CASE("linear data through the three-point stencil lands on the interface") {
  const auto a = generate_flux_coeffs({1, 1});
  const Rational h(1, 10), xj(3, 7);
  Rational flux = 0;
  for (int l = -1; l <= 1; ++l) flux += a[l + 1] * (xj + l * h);
  CHECK(flux == xj + h / 2);
}

TEST_CASE("stencils wider than 17 points are rejected") {
  CHECK_THROWS_AS(generate_flux_coeffs({9, 8}), std::invalid_argument);
  CHECK_THROWS_AS(generate_is_coeffs({0, 17}), std::invalid_argument);
  CHECK_THROWS_AS(generate_flux_coeffs({-1, 2}), std::invalid_argument);
  CHECK_NOTHROW(generate_flux_coeffs({8, 8}));
}

TEST_CASE("indicator coefficients") {
  CHECK(generate_is_coeffs({1, 1}) == rationals({"1", "-2", "1"}));
  CHECK(generate_is_coeffs({3, 3}) == rationals({"1", "-6", "15", "-20", "15", "-6", "1"}));
  CHECK(generate_is_coeffs({0, 0}) == rationals({"0"}));
}

TEST_CASE("generated coefficients agree with the primitive-function oracle") {
  for (const auto& s : candidate_stencils()) {
    CAPTURE(s.label());
    CHECK(generate_flux_coeffs(s) == primitive_route_flux(s));
  }
}

TEST_CASE("indicator coefficients are signed binomial weights") {
  for (const auto& s : candidate_stencils()) {
    if (s.width() == 1) continue;
    CAPTURE(s.label());
    const auto b = generate_is_coeffs(s);
    const int d = s.degree();
    for (int k = 0; k <= d; ++k) {
      const Rational expected = ((d - k) % 2 == 0 ? 1 : -1) * binomial(d, k);
      CHECK(b[k] == expected);
    }
  }
}

TEST_CASE("exact reproduction of monomials up to the stencil degree") {
  for (const auto& s : candidate_stencils()) {
    CAPTURE(s.label());
    const auto a = generate_flux_coeffs(s);
    for (int q = 0; q <= s.degree(); ++q) {
      Rational flux = 0;
      for (int l = -s.m; l <= s.n; ++l) flux += a[l + s.m] * cell_average_of_monomial(l, q);
      Rational exact = 1;
      for (int i = 0; i < q; ++i) exact /= 2;
      CHECK(flux == exact);
    }
  }
}

TEST_CASE("consistency sums") {
  for (const auto& s : candidate_stencils()) {
    CAPTURE(s.label());
    Rational sa = 0, sb = 0;
    for (const auto& v : generate_flux_coeffs(s)) sa += v;
    for (const auto& v : generate_is_coeffs(s)) sb += v;
    CHECK(sa == 1);
    CHECK(sb == 0);
  }
}

TEST_CASE("candidate pools") {
  CHECK(candidate_stencils().size() == 29);
  CHECK(candidate_pool(9) == candidate_stencils());
  const std::vector<Stencil> five = {{2, 2}, {1, 2}, {2, 1}, {1, 1}, {0, 1}, {1, 0}, {0, 0}};
  CHECK(candidate_pool(3) == five);
  for (int r : {3, 5, 7, 9}) {
    const auto pool = candidate_pool(r);
    CHECK(pool.front() == Stencil{r - 1, r - 1});
    CHECK(pool.back() == Stencil{0, 0});
  }
}

TEST_CASE("published tables") {
  const auto report = validate_against_tables();
  std::ostringstream os;
  write_report(os, report);
  MESSAGE(os.str());
  CHECK(report.stencils_checked == 29);
  CHECK(report.stencils_matched == 27);
  // The only disagreements are the two -3423 entries for C(14,7) = 3432.
  REQUIRE(report.mismatches.size() == 2);
  for (const auto& mm : report.mismatches) {
    CHECK(mm.kind == CoefficientMismatch::Kind::Indicator);
    CHECK(mm.expected == -3423);
    CHECK(mm.actual == -3432);
    CHECK(mm.published_erratum);
  }
  CHECK(report.mismatches[0].stencil == Stencil{7, 7});
  CHECK(report.mismatches[0].l == 0);
  CHECK(report.mismatches[1].stencil == Stencil{8, 6});
  CHECK(report.mismatches[1].l == -1);
  CHECK(report.consistent());
  CHECK_FALSE(report.ok());
}

TEST_CASE("a perturbed table entry is reported") {
  auto tables = reference_tables();
  const auto baseline = validate_against_tables(tables).mismatches.size();
  tables[3].flux_coeffs[2] += Rational(1, 360360);
  const auto report = validate_against_tables(tables);
  REQUIRE(report.mismatches.size() == baseline + 1);
  bool found = false;
  for (const auto& mm : report.mismatches) {
    if (mm.stencil == Stencil{7, 7} && mm.kind == CoefficientMismatch::Kind::Flux) {
      found = true;
      CHECK(mm.l == -5);
    }
  }
  CHECK(found);
}

TEST_CASE("table validation is fast") {
  const auto t0 = std::chrono::steady_clock::now();
  (void)validate_against_tables();
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(seconds < 1.0);
}

TEST_CASE("mirroring") {
  SUBCASE("one point") {
    const auto m = mirror_coeffs(rationals({"1"}), {0, 0});
    CHECK(m.coeffs == rationals({"1"}));
    CHECK(m.anchor == 1);
    CHECK(m.stencil == Stencil{0, 0});
  }
  SUBCASE("three point, checked on reflected data") {
    const auto a = generate_flux_coeffs({1, 1});
    const auto m = mirror_coeffs(a, {1, 1});
    CHECK(m.coeffs == rationals({"2/6", "5/6", "-1/6"}));
    CHECK(m.anchor == 1);
    // data g(x) reflected about x_{j+1/2}: g_k = f_{1-k}
    const std::vector<Rational> f = {Rational(3), Rational(-2), Rational(7), Rational(5), Rational(11)};  // cells -2..2
    auto fval = [&](int k) { return f.at(k + 2); };
    auto gval = [&](int k) { return fval(1 - k); };
    Rational plus = 0, minus = 0;
    for (int l = -1; l <= 1; ++l) plus += a[l + 1] * fval(l);
    for (int l = -m.stencil.m; l <= m.stencil.n; ++l) minus += m.coeffs[l + m.stencil.m] * gval(m.anchor + l);
    CHECK(plus == minus);
  }
  SUBCASE("involution over the whole pool") {
    for (const auto& s : candidate_stencils()) {
      const auto a = generate_flux_coeffs(s);
      const auto once = mirror_coeffs(a, s, 0);
      const auto twice = mirror_coeffs(once.coeffs, once.stencil, once.anchor);
      CHECK(twice.coeffs == a);
      CHECK(twice.stencil == s);
      CHECK(twice.anchor == 0);
    }
  }
  SUBCASE("symmetric data gives equal one-sided fluxes") {
    const Stencil s{2, 2};
    const auto a = generate_flux_coeffs(s);
    const auto m = mirror_coeffs(a, s);
    // f_{j+l} = f_{j+1-l}
    auto f = [](int k) { return Rational((k - 1) * k + 5, 3); };
    Rational plus = 0, minus = 0;
    for (int l = -2; l <= 2; ++l) plus += a[l + 2] * f(l);
    for (int l = -2; l <= 2; ++l) minus += m.coeffs[l + 2] * f(m.anchor + l);
    CHECK(plus == minus);
  }
  CHECK_THROWS_AS(mirror_coeffs(rationals({"1", "2"}), {1, 1}), std::invalid_argument);
}

TEST_CASE("Jiang-Shu form for the centred three-point stencil") {
  const auto form = generate_jiang_shu_form({1, 1});
  const auto beta = evaluate_jiang_shu(form, rationals({"1", "2", "4"}));
  CHECK(beta == Rational(13, 12) + Rational(9, 4));
  CHECK(evaluate_jiang_shu(form, rationals({"5", "5", "5"})) == 0);
  // Closed form for every sample set: 13/12 (f0-2f1+f2)^2 + 1/4 (f0-f2)^2.
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> dist(-50, 50);
  for (int trial = 0; trial < 50; ++trial) {
    const Rational f0(dist(rng)), f1(dist(rng), 7), f2(dist(rng), 3);
    const Rational expected =
        Rational(13, 12) * (f0 - 2 * f1 + f2) * (f0 - 2 * f1 + f2) + Rational(1, 4) * (f0 - f2) * (f0 - f2);
    CHECK(evaluate_jiang_shu(form, std::vector<Rational>{f0, f1, f2}) == expected);
  }
}

TEST_CASE("Jiang-Shu forms scale quadratically and match quadrature") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const auto gauss = gauss_legendre(10);
  for (const Stencil s : {Stencil{1, 1}, Stencil{2, 0}, Stencil{2, 2}, Stencil{4, 4}}) {
    CAPTURE(s.label());
    const auto form = generate_jiang_shu_form(s);
    const int w = s.width();
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Rational> f(w);
      std::vector<long double> fd(w);
      for (int i = 0; i < w; ++i) {
        const int num = static_cast<int>(std::lround(dist(rng) * 1000));
        f[i] = Rational(num, 1000);
        fd[i] = num / 1000.0L;
      }
      const Rational beta = evaluate_jiang_shu(form, f);
      std::vector<Rational> scaled(f);
      for (auto& v : scaled) v *= 3;
      CHECK(evaluate_jiang_shu(form, scaled) == 9 * beta);

      // Quadrature oracle: fit the polynomial with a floating Vandermonde
      // solve on cell averages, then integrate squared derivatives with
      // Gauss-Legendre nodes on [-1/2, 1/2].
      const int d = s.degree();
      std::vector<std::vector<long double>> A(w, std::vector<long double>(w + 1));
      for (int k = 0; k < w; ++k) {
        const long double lo = (k - s.m) - 0.5L, hi = (k - s.m) + 0.5L;
        for (int q = 0; q < w; ++q) A[k][q] = (std::pow(hi, q + 1) - std::pow(lo, q + 1)) / (q + 1);
        A[k][w] = fd[k];
      }
      for (int c = 0; c < w; ++c) {
        int piv = c;
        for (int r = c + 1; r < w; ++r)
          if (std::fabs(A[r][c]) > std::fabs(A[piv][c])) piv = r;
        std::swap(A[c], A[piv]);
        for (int r = 0; r < w; ++r) {
          if (r == c) continue;
          const long double fac = A[r][c] / A[c][c];
          for (int k = c; k <= w; ++k) A[r][k] -= fac * A[c][k];
        }
      }
      std::vector<long double> coef(w);
      for (int q = 0; q < w; ++q) coef[q] = A[q][w] / A[q][q];
      long double quad = 0;
      for (int l = 1; l <= d; ++l) {
        for (std::size_t g = 0; g < gauss.nodes.size(); ++g) {
          const long double x = 0.5L * gauss.nodes[g];
          long double deriv = 0;
          for (int q = l; q <= d; ++q) {
            long double fall = 1;
            for (int i = 0; i < l; ++i) fall *= (q - i);
            deriv += coef[q] * fall * std::pow(x, q - l);
          }
          quad += 0.5L * gauss.weights[g] * deriv * deriv;
        }
      }
      const double exact = static_cast<double>(beta);
      CHECK(std::fabs(static_cast<double>(quad) - exact) <= 1e-12 * std::fabs(exact) + 1e-14);
    }
  }
}

TEST_CASE("coefficient CSV dump") {
  std::vector<CoefficientSet> sets = {generate_coefficient_set({1, 1})};
  std::ostringstream os;
  write_coefficients_csv(os, sets);
  const std::string text = os.str();
  CHECK(text.rfind("stencil,kind,l,numerator,denominator\n", 0) == 0);
  CHECK(text.find("S[j-1:j+1],flux,-1,-1,6\n") != std::string::npos);
  CHECK(text.find("S[j-1:j+1],flux,1,1,3\n") != std::string::npos);
  CHECK(text.find("S[j-1:j+1],indicator,0,-2,1\n") != std::string::npos);
}
