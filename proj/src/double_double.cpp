#include "enomr/double_double.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/float128.hpp>

#include <iomanip>

#include <ostream>
#include <sstream>
#include <stdexcept>

namespace enomr {

namespace {

using Quad = boost::multiprecision::float128;

Quad to_quad(const DoubleDouble& a) { return Quad(a.hi()) + Quad(a.lo()); }

DoubleDouble from_quad(const Quad& q) {
  double hi = static_cast<double>(q);
  double lo = static_cast<double>(q - Quad(hi));
  return DoubleDouble::from_parts(hi, lo);
}

}  // namespace

DoubleDouble sin(const DoubleDouble& a) { return from_quad(boost::multiprecision::sin(to_quad(a))); }
DoubleDouble cos(const DoubleDouble& a) { return from_quad(boost::multiprecision::cos(to_quad(a))); }
DoubleDouble exp(const DoubleDouble& a) { return from_quad(boost::multiprecision::exp(to_quad(a))); }
DoubleDouble log(const DoubleDouble& a) { return from_quad(boost::multiprecision::log(to_quad(a))); }
DoubleDouble pow(const DoubleDouble& a, const DoubleDouble& b) {
  return from_quad(boost::multiprecision::pow(to_quad(a), to_quad(b)));
}

DoubleDouble DoubleDouble::pi() {
  static const DoubleDouble value = from_quad(boost::math::constants::pi<Quad>());
  return value;
}

DoubleDouble DoubleDouble::parse(const std::string& text) {
  try {
    return from_quad(Quad(text));
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: " + text);
  }
}

std::string DoubleDouble::to_string(int digits) const {
  std::ostringstream os;
  os << std::scientific << std::setprecision(digits - 1) << to_quad(*this);
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const DoubleDouble& a) {
  auto prec = os.precision();
  return os << a.to_string(prec > 0 ? static_cast<int>(prec) + 1 : 34);
}

}  // namespace enomr
