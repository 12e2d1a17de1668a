#include "enomr/scalar.hpp"

#include <charconv>
#include <stdexcept>

namespace enomr {

std::string_view to_string(Precision p) {
  return p == Precision::Double ? "double" : "extended";
}

Precision parse_precision(std::string_view text) {
  if (text == "double") return Precision::Double;
  if (text == "extended") return Precision::Extended;
  throw std::invalid_argument("unknown precision '" + std::string(text) + "' (expected double|extended)");
}

namespace {

// Exact conversion of an integer that may exceed 2^53: split into a leading
// double and the remainder.
DoubleDouble big_to_dd(const BigInt& v) {
  double hi = static_cast<double>(v);
  BigInt rest = v - BigInt(hi);
  double lo = static_cast<double>(rest);
  return DoubleDouble::from_parts(hi, lo);
}

}  // namespace

double ScalarTraits<double>::from_rational(const Rational& q) {
  // Correctly rounded for the coefficient sizes used here; boost rounds the
  // quotient of the exact numerator and denominator.
  return static_cast<double>(q);
}

std::string ScalarTraits<double>::format(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return {buf, ptr};
}

DoubleDouble ScalarTraits<DoubleDouble>::from_rational(const Rational& q) {
  return big_to_dd(boost::multiprecision::numerator(q)) / big_to_dd(boost::multiprecision::denominator(q));
}

std::string ScalarTraits<DoubleDouble>::format(const DoubleDouble& x) { return x.to_string(34); }

}  // namespace enomr
