#pragma once

// Double-double arithmetic: an unevaluated sum hi + lo of two doubles with
// |lo| <= ulp(hi)/2, giving roughly 106 bits of significand. Addition and
// multiplication use error-free transforms; fma is required for two_prod.

#include <cmath>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>

namespace enomr {

class DoubleDouble {
 public:
  constexpr DoubleDouble() = default;
  constexpr DoubleDouble(double x) : hi_(x), lo_(0.0) {}  // NOLINT: implicit by design of numeric type
  constexpr DoubleDouble(int x) : hi_(static_cast<double>(x)), lo_(0.0) {}  // NOLINT
  constexpr DoubleDouble(long x) : hi_(static_cast<double>(x)), lo_(static_cast<double>(x - static_cast<long>(static_cast<double>(x)))) {}  // NOLINT
  constexpr DoubleDouble(long long x) : hi_(static_cast<double>(x)), lo_(static_cast<double>(x - static_cast<long long>(static_cast<double>(x)))) {}  // NOLINT

  static DoubleDouble from_parts(double hi, double lo) {
    DoubleDouble r;
    r.hi_ = hi;
    r.lo_ = lo;
    return r.renormalized();
  }

  [[nodiscard]] constexpr double hi() const { return hi_; }
  [[nodiscard]] constexpr double lo() const { return lo_; }
  explicit constexpr operator double() const { return hi_ + lo_; }

  friend DoubleDouble operator-(const DoubleDouble& a) {
    DoubleDouble r;
    r.hi_ = -a.hi_;
    r.lo_ = -a.lo_;
    return r;
  }

  friend DoubleDouble operator+(const DoubleDouble& a, const DoubleDouble& b) {
    auto [s, e] = two_sum(a.hi_, b.hi_);
    auto [t, f] = two_sum(a.lo_, b.lo_);
    e += t;
    auto [s2, e2] = quick_two_sum(s, e);
    e2 += f;
    auto [hi, lo] = quick_two_sum(s2, e2);
    return raw(hi, lo);
  }

  friend DoubleDouble operator-(const DoubleDouble& a, const DoubleDouble& b) { return a + (-b); }

  friend DoubleDouble operator*(const DoubleDouble& a, const DoubleDouble& b) {
    auto [p, e] = two_prod(a.hi_, b.hi_);
    e += a.hi_ * b.lo_ + a.lo_ * b.hi_;
    auto [hi, lo] = quick_two_sum(p, e);
    return raw(hi, lo);
  }

  friend DoubleDouble operator/(const DoubleDouble& a, const DoubleDouble& b) {
    // Long division with three quotient digits.
    double q1 = a.hi_ / b.hi_;
    DoubleDouble r = a - b * DoubleDouble(q1);
    double q2 = r.hi_ / b.hi_;
    r = r - b * DoubleDouble(q2);
    double q3 = r.hi_ / b.hi_;
    auto [hi, lo] = quick_two_sum(q1, q2);
    return raw(hi, lo) + DoubleDouble(q3);
  }

  DoubleDouble& operator+=(const DoubleDouble& b) { return *this = *this + b; }
  DoubleDouble& operator-=(const DoubleDouble& b) { return *this = *this - b; }
  DoubleDouble& operator*=(const DoubleDouble& b) { return *this = *this * b; }
  DoubleDouble& operator/=(const DoubleDouble& b) { return *this = *this / b; }

  friend bool operator==(const DoubleDouble& a, const DoubleDouble& b) {
    return a.hi_ == b.hi_ && a.lo_ == b.lo_;
  }
  friend std::partial_ordering operator<=>(const DoubleDouble& a, const DoubleDouble& b) {
    if (auto c = a.hi_ <=> b.hi_; c != 0) return c;
    return a.lo_ <=> b.lo_;
  }

  friend DoubleDouble abs(const DoubleDouble& a) { return a.hi_ < 0.0 ? -a : a; }
  friend DoubleDouble fabs(const DoubleDouble& a) { return abs(a); }
  friend bool isnan(const DoubleDouble& a) { return std::isnan(a.hi_) || std::isnan(a.lo_); }
  friend bool isfinite(const DoubleDouble& a) { return std::isfinite(a.hi_) && std::isfinite(a.lo_); }

  friend DoubleDouble sqrt(const DoubleDouble& a) {
    if (a.hi_ <= 0.0) return DoubleDouble(std::sqrt(a.hi_));
    // One Newton step on the double estimate doubles the precision.
    double x = std::sqrt(a.hi_);
    DoubleDouble xx(x);
    DoubleDouble r = a - xx * xx;
    return xx + DoubleDouble(r.hi_ / (2.0 * x));
  }

  // Transcendentals are evaluated in binary128 and rounded back.
  friend DoubleDouble sin(const DoubleDouble& a);
  friend DoubleDouble cos(const DoubleDouble& a);
  friend DoubleDouble exp(const DoubleDouble& a);
  friend DoubleDouble log(const DoubleDouble& a);
  friend DoubleDouble pow(const DoubleDouble& a, const DoubleDouble& b);

  static DoubleDouble pi();
  static DoubleDouble epsilon() { return from_parts(0x1p-104, 0.0); }
  static DoubleDouble parse(const std::string& text);

  [[nodiscard]] std::string to_string(int digits = 34) const;

  friend std::ostream& operator<<(std::ostream& os, const DoubleDouble& a);

 private:
  double hi_ = 0.0;
  double lo_ = 0.0;

  struct Pair {
    double hi;
    double lo;
  };

  static DoubleDouble raw(double hi, double lo) {
    DoubleDouble r;
    r.hi_ = hi;
    r.lo_ = lo;
    return r;
  }
  [[nodiscard]] DoubleDouble renormalized() const {
    auto [hi, lo] = quick_two_sum(hi_, lo_);
    return raw(hi, lo);
  }
  static Pair quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
  }
  static Pair two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
  }
  static Pair two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
  }
};

}  // namespace enomr

template <>
class std::numeric_limits<enomr::DoubleDouble> : public std::numeric_limits<double> {
 public:
  static enomr::DoubleDouble epsilon() { return enomr::DoubleDouble::epsilon(); }
  static constexpr int digits = 106;
  static constexpr int digits10 = 31;
  static constexpr int max_digits10 = 34;
};
