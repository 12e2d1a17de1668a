#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <limits>
#include <string>
#include <string_view>

#include "enomr/double_double.hpp"

namespace enomr {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

enum class Precision { Double, Extended };

std::string_view to_string(Precision p);
Precision parse_precision(std::string_view text);

template <class Real>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr Precision precision = Precision::Double;
  static constexpr std::string_view name = "double";
  static double epsilon() { return std::numeric_limits<double>::epsilon(); }
  static double from_rational(const Rational& q);
  static double to_double(double x) { return x; }
  static double pi() { return 3.141592653589793238462643383279502884; }
  static std::string format(double x);
};

template <>
struct ScalarTraits<DoubleDouble> {
  static constexpr Precision precision = Precision::Extended;
  static constexpr std::string_view name = "extended";
  static DoubleDouble epsilon() { return DoubleDouble::epsilon(); }
  static DoubleDouble from_rational(const Rational& q);
  static double to_double(const DoubleDouble& x) { return static_cast<double>(x); }
  static DoubleDouble pi() { return DoubleDouble::pi(); }
  static std::string format(const DoubleDouble& x);
};

template <class Real>
Real from_rational(const Rational& q) {
  return ScalarTraits<Real>::from_rational(q);
}

template <class Real>
double to_double(const Real& x) {
  return ScalarTraits<Real>::to_double(x);
}

// Round-trip text form: 17 significant digits for double, 34 for extended.
template <class Real>
std::string format_number(const Real& x) {
  return ScalarTraits<Real>::format(x);
}

}  // namespace enomr
