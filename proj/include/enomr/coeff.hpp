#pragma once

// Exact reconstruction coefficients for finite-difference flux stencils.
//
// Everything here is computed in rational arithmetic on a unit grid (h = 1,
// x_j = 0, cell I_k = [k - 1/2, k + 1/2]). Floating-point working copies are
// produced elsewhere by a single rounding of these values.

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "enomr/scalar.hpp"

namespace enomr {

inline constexpr int kMaxStencilWidth = 17;

/// Window {j-m, ..., j+n} relative to the cell j that owns the interface j+1/2.
struct Stencil {
  int m = 0;
  int n = 0;

  [[nodiscard]] constexpr int width() const { return m + n + 1; }
  [[nodiscard]] constexpr int degree() const { return m + n; }
  [[nodiscard]] constexpr bool two_sided() const { return m >= 1 && n >= 1; }
  [[nodiscard]] std::string label() const;

  friend constexpr bool operator==(const Stencil&, const Stencil&) = default;
};

/// Throws std::invalid_argument for negative offsets or widths above 17.
void check_stencil(const Stencil& s);

/// The 29 candidates of the 17-point scheme, widest first.
const std::vector<Stencil>& candidate_stencils();

/// Candidates of the (2r-1)-point scheme: the entries of the 17-point list
/// with m <= r-1 and n <= r-1, in the same order.
std::vector<Stencil> candidate_pool(int r);

/// Inverse of the cell-average moment matrix: row q holds the weights that
/// produce the x^q coefficient of the reconstruction polynomial from the
/// stencil samples (ordered l = -m..n).
std::vector<std::vector<Rational>> polynomial_weights(const Stencil& s);

/// a_l, l = -m..n: flux at x_{j+1/2} from the stencil samples.
std::vector<Rational> generate_flux_coeffs(const Stencil& s);

/// b_l, l = -m..n: the (m+n)-th undivided derivative of the reconstruction
/// polynomial. A one-point stencil gets [0].
std::vector<Rational> generate_is_coeffs(const Stencil& s);

struct CoefficientSet {
  Stencil stencil;
  std::vector<Rational> flux_coeffs;
  std::vector<Rational> is_coeffs;
};

CoefficientSet generate_coefficient_set(const Stencil& s);

/// Coefficients attached to a stencil anchored at cell j + anchor.
struct AnchoredCoeffs {
  std::vector<Rational> coeffs;
  Stencil stencil;
  int anchor = 0;
};

/// Reflects a stencil about x_{j+1/2}: the f^+ coefficients at anchor j
/// become the f^- coefficients anchored at j+1 (and back again).
AnchoredCoeffs mirror_coeffs(std::span<const Rational> coeffs, const Stencil& s, int anchor = 0);

/// Jiang-Shu smoothness indicator as a quadratic form. With c = D f the
/// derivative coefficients (x^1..x^d of the reconstruction polynomial),
/// beta = c^T G c.
struct JiangShuForm {
  Stencil stencil;
  std::vector<std::vector<Rational>> derivative_weights;  // d rows, width columns
  std::vector<std::vector<Rational>> gram;                // d x d, symmetric positive definite
};

JiangShuForm generate_jiang_shu_form(const Stencil& s);
Rational evaluate_jiang_shu(const JiangShuForm& form, std::span<const Rational> samples);

/// Exact LDL^T split of the Jiang-Shu form: beta = sum_i w_i (rows_i . f)^2
/// with every w_i > 0. Rounding rows and weights once gives a non-negative
/// working-precision beta.
struct JiangShuSquares {
  Stencil stencil;
  std::vector<Rational> weights;
  std::vector<std::vector<Rational>> rows;  // d rows, width columns
};

JiangShuSquares jiang_shu_squares(const Stencil& s);

// Embedded copies of the published coefficient tables.
struct ReferenceEntry {
  Stencil stencil;
  std::vector<Rational> flux_coeffs;
  std::vector<Rational> is_coeffs;
};

const std::vector<ReferenceEntry>& reference_tables();

struct CoefficientMismatch {
  enum class Kind { Flux, Indicator, Shape };
  Stencil stencil;
  Kind kind = Kind::Flux;
  int l = 0;
  Rational expected;
  Rational actual;
  // The published column breaks its own consistency sum (sum a_l = 1 or
  // sum b_l = 0) and the generated values restore it.
  bool published_erratum = false;
};

struct ValidationReport {
  int stencils_checked = 0;
  int stencils_matched = 0;
  std::vector<CoefficientMismatch> mismatches;

  /// Every entry equal, no exceptions.
  [[nodiscard]] bool ok() const { return mismatches.empty() && stencils_checked == stencils_matched; }
  /// Every mismatch is a verified published erratum.
  [[nodiscard]] bool consistent() const;
  [[nodiscard]] int errata() const;
};

ValidationReport validate_against_tables(std::span<const ReferenceEntry> tables);
ValidationReport validate_against_tables();

void write_report(std::ostream& os, const ValidationReport& report);

/// CSV dump: stencil,kind,l,numerator,denominator.
void write_coefficients_csv(std::ostream& os, std::span<const CoefficientSet> sets);

}  // namespace enomr
