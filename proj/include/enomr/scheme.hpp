#pragma once

#include <string>
#include <string_view>

namespace enomr {

enum class SchemeKind { EnoMr, WenoAo53, WenoAo953 };

/// WENO-Z weight parameters used by the adaptive-order reference schemes.
struct WenoParams {
  double epsilon = 1e-12;
  int power = 2;
  double gamma_hi = 0.85;
  double gamma_lo = 0.85;
};

/// A flux reconstruction: ENO-MR of order 2r-1 (r in {3,5,7,9}) or one of the
/// WENO-AO comparators. ENO-MR has no parameters; `weno` is ignored for it.
struct Scheme {
  SchemeKind kind = SchemeKind::EnoMr;
  int r = 3;
  WenoParams weno{};

  static Scheme eno_mr(int order);
  static Scheme weno_ao53(WenoParams params = {});
  static Scheme weno_ao953(WenoParams params = {});

  /// Accepts eno-mr5|eno-mr9|eno-mr13|eno-mr17|weno-ao53|weno-ao953.
  static Scheme parse(std::string_view name);

  [[nodiscard]] int order() const { return 2 * r - 1; }
  [[nodiscard]] int window_size() const { return 2 * r - 1; }
  [[nodiscard]] std::string name() const;
};

}  // namespace enomr
